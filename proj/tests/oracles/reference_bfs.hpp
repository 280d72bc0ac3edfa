#pragma once

// Test-only oracle: one queue BFS per source, all pairs, giant component.

#include <cstdint>
#include <queue>
#include <vector>

#include "lightcone/graph_analysis.hpp"

namespace oracle {

inline double reference_avg_path_length(const lightcone::graph::SampledGraph& g) {
    const auto cs = lightcone::graph::connected_components(g);
    const std::size_t n = g.n_nodes();
    long double total = 0;
    long double pairs = 0;
    std::vector<int> dist(n);
    for (std::size_t s = 0; s < n; ++s) {
        if (cs.label[s] != cs.giant_label) continue;
        std::fill(dist.begin(), dist.end(), -1);
        std::queue<std::size_t> q;
        q.push(s);
        dist[s] = 0;
        while (!q.empty()) {
            const auto u = q.front();
            q.pop();
            for (const auto v : g.neighbors(u))
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    total += dist[v];
                    pairs += 1;
                    q.push(v);
                }
        }
    }
    return static_cast<double>(total / pairs);
}

}  // namespace oracle
