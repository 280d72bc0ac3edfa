#pragma once

// Degree / size / path-length relations for random and scale-free networks,
// plus samplers and a BFS path-length estimator that serve as empirical
// checks on the analytic relations.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "constants.hpp"
#include "errors.hpp"
#include "rng.hpp"

namespace lightcone::graph {

/// Gaussian-degree random network described by its size and the average
/// path length it is meant to achieve.
struct RandomGaussian {
    double n_total = 0;
    double avg_path_length = 0;
};

struct NaturalCutoff {};
struct ExplicitCutoff {
    double k_max = 0;
};
using CutoffPolicy = std::variant<NaturalCutoff, ExplicitCutoff>;

/// p(k) = C k^-alpha on [k_min, k_max].
struct PowerLaw {
    double alpha = 2.5;
    double k_min = 1;
    CutoffPolicy cutoff = NaturalCutoff{};
};

using DegreeDistribution = std::variant<RandomGaussian, PowerLaw>;

// Exponent range accepted for a PowerLaw used as a network description.
inline constexpr double kMaxAlpha = 4.0;

inline void validate(const RandomGaussian& d) {
    if (!(d.n_total >= 2))
        throw DomainError("RandomGaussian: n_total must be >= 2");
    if (!(d.avg_path_length >= 1))
        throw DomainError("RandomGaussian: avg_path_length must be >= 1");
}

inline void validate(const PowerLaw& d) {
    if (!(d.alpha > 1 && d.alpha <= kMaxAlpha))
        throw DomainError("PowerLaw: alpha must lie in (1, 4], got " + std::to_string(d.alpha));
    if (!(d.k_min >= 1))
        throw DomainError("PowerLaw: k_min must be >= 1");
    if (const auto* e = std::get_if<ExplicitCutoff>(&d.cutoff); e && !(e->k_max >= d.k_min))
        throw DomainError("PowerLaw: explicit k_max must be >= k_min");
}

inline void validate(const DegreeDistribution& d) {
    std::visit([](const auto& x) { validate(x); }, d);
}

// ---------------------------------------------------------------------------
// Random (Gaussian-degree) networks

/// Average degree needed for an N-node random network to reach the given
/// average path length: exp{[ln N - gamma] / L + 1/2}.
inline double avg_degree_random(double n_total, double avg_path_length) {
    if (!(n_total >= 2)) throw DomainError("avg_degree_random: n_total must be >= 2");
    if (!(avg_path_length >= 1))
        throw DomainError("avg_degree_random: avg_path_length must be >= 1");
    return std::exp((std::log(n_total) - constants::euler_gamma) / avg_path_length + 0.5);
}

/// Inverse of avg_degree_random: L = (ln N - gamma) / (ln k - 1/2).
inline double path_length_random(double n_total, double avg_degree) {
    if (!(n_total >= 2)) throw DomainError("path_length_random: n_total must be >= 2");
    const double denom = std::log(avg_degree) - 0.5;
    if (!(denom > 0))
        throw DomainError("path_length_random: avg_degree must exceed e^(1/2)");
    return (std::log(n_total) - constants::euler_gamma) / denom;
}

// ---------------------------------------------------------------------------
// Power-law networks (continuous approximation)

namespace detail {

inline void require_normalizable(double alpha, const char* who) {
    if (!(alpha > 1))
        throw DomainError(std::string(who) + ": alpha must be > 1 (non-normalizable)");
}

// Integral of k^p over [a, b], 0 < a <= b. The p = -1 branch is exact; near
// p = -1 the expm1 form keeps full precision.
inline double power_integral(double p, double a, double b) {
    const double log_ratio = std::log(b / a);
    const double q = p + 1.0;
    if (q == 0.0) return log_ratio;
    return std::pow(a, q) * std::expm1(q * log_ratio) / q;
}

}  // namespace detail

/// Largest expected degree: the explicit cutoff, or the natural cutoff
/// k_min * N^(1/(alpha-1)) at which one node is expected to lie beyond.
inline double powerlaw_max_degree(const PowerLaw& dist, double n_total) {
    detail::require_normalizable(dist.alpha, "powerlaw_max_degree");
    if (!(dist.k_min > 0)) throw DomainError("powerlaw_max_degree: k_min must be > 0");
    if (const auto* e = std::get_if<ExplicitCutoff>(&dist.cutoff)) return e->k_max;
    if (!(n_total >= 1)) throw DomainError("powerlaw_max_degree: n_total must be >= 1");
    return dist.k_min * std::pow(n_total, 1.0 / (dist.alpha - 1.0));
}

/// Raw moment E[k^order] of the normalized law on [k_min, k_max].
inline double powerlaw_moment(const PowerLaw& dist, double n_total, int order) {
    detail::require_normalizable(dist.alpha, "powerlaw_moment");
    if (!(n_total >= 2)) throw DomainError("powerlaw_moment: n_total must be >= 2");
    const double k_max = powerlaw_max_degree(dist, n_total);
    if (!(k_max >= dist.k_min)) throw DomainError("powerlaw_moment: k_max < k_min");
    if (k_max == dist.k_min) return std::pow(dist.k_min, order);
    const double norm = detail::power_integral(-dist.alpha, dist.k_min, k_max);
    return detail::power_integral(order - dist.alpha, dist.k_min, k_max) / norm;
}

inline double powerlaw_mean_degree(const PowerLaw& dist, double n_total) {
    return powerlaw_moment(dist, n_total, 1);
}

inline double powerlaw_degree_variance(const PowerLaw& dist, double n_total) {
    const double m1 = powerlaw_moment(dist, n_total, 1);
    return std::max(0.0, powerlaw_moment(dist, n_total, 2) - m1 * m1);
}

/// Smallest k_min whose natural-cutoff law has the requested mean degree.
inline PowerLaw powerlaw_with_mean(double alpha, double target_mean, double n_total) {
    detail::require_normalizable(alpha, "powerlaw_with_mean");
    if (!(target_mean >= 1)) throw DomainError("powerlaw_with_mean: target_mean must be >= 1");
    // The mean is proportional to k_min at fixed alpha and N.
    const double unit = powerlaw_mean_degree(PowerLaw{alpha, 1.0, NaturalCutoff{}}, n_total);
    return PowerLaw{alpha, target_mean / unit, NaturalCutoff{}};
}

/// Real-valued draw from the truncated law by CDF inversion.
inline double sample_powerlaw_degree(rng::Engine& eng, const PowerLaw& dist, double k_max) {
    const double u = rng::uniform01(eng);
    const double q = 1.0 - dist.alpha;
    const double lo = std::pow(dist.k_min, q);
    const double hi = std::pow(k_max, q);
    return std::clamp(std::pow(lo + u * (hi - lo), 1.0 / q), dist.k_min, k_max);
}

/// floor(x) plus a Bernoulli(frac(x)) remainder; unbiased: E[result] = x.
inline std::uint64_t stochastic_round(rng::Engine& eng, double x) {
    const double fl = std::floor(x);
    const double frac = x - fl;
    return static_cast<std::uint64_t>(fl) + (rng::uniform01(eng) < frac ? 1 : 0);
}

// ---------------------------------------------------------------------------
// Sampled graphs

/// Undirected simple graph in compressed adjacency form.
class SampledGraph {
public:
    using Node = std::uint32_t;
    using Edge = std::pair<Node, Node>;

    SampledGraph() = default;

    /// Builds from an edge list; self-loops and duplicate edges are dropped.
    SampledGraph(std::size_t n_nodes, std::vector<Edge> edges, std::uint64_t seed)
        : n_nodes_(n_nodes), seed_(seed) {
        for (auto& [u, v] : edges) {
            if (u >= n_nodes || v >= n_nodes)
                throw DomainError("SampledGraph: edge endpoint out of range");
            if (u > v) std::swap(u, v);
        }
        const std::size_t raw = edges.size();
        std::erase_if(edges, [](const Edge& e) { return e.first == e.second; });
        self_loops_removed_ = raw - edges.size();
        std::sort(edges.begin(), edges.end());
        const std::size_t before_unique = edges.size();
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        multi_edges_removed_ = before_unique - edges.size();

        offsets_.assign(n_nodes + 1, 0);
        for (const auto& [u, v] : edges) {
            ++offsets_[u + 1];
            ++offsets_[v + 1];
        }
        for (std::size_t i = 0; i < n_nodes; ++i) offsets_[i + 1] += offsets_[i];
        neighbors_.resize(offsets_[n_nodes]);
        std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
        for (const auto& [u, v] : edges) {
            neighbors_[fill[u]++] = v;
            neighbors_[fill[v]++] = u;
        }
        for (std::size_t i = 0; i < n_nodes; ++i)
            std::sort(neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
                      neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]));
        edges_ = std::move(edges);
    }

    std::size_t n_nodes() const noexcept { return n_nodes_; }
    std::size_t n_edges() const noexcept { return edges_.size(); }
    std::uint64_t seed() const noexcept { return seed_; }

    std::span<const Node> neighbors(std::size_t v) const {
        return {neighbors_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
    }
    std::size_t degree(std::size_t v) const { return offsets_[v + 1] - offsets_[v]; }

    /// Sorted (u < v) edge list.
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    double mean_degree() const {
        return n_nodes_ == 0 ? 0.0 : 2.0 * static_cast<double>(edges_.size()) / static_cast<double>(n_nodes_);
    }

    /// Degree sequence requested by the sampler, before cleanup. Empty for
    /// graphs not built from a degree sequence.
    const std::vector<std::uint32_t>& target_degrees() const noexcept { return target_degrees_; }
    void set_target_degrees(std::vector<std::uint32_t> d) { target_degrees_ = std::move(d); }

    std::size_t self_loops_removed() const noexcept { return self_loops_removed_; }
    std::size_t multi_edges_removed() const noexcept { return multi_edges_removed_; }

private:
    std::size_t n_nodes_ = 0;
    std::uint64_t seed_ = 0;
    std::vector<std::size_t> offsets_{0};
    std::vector<Node> neighbors_;
    std::vector<Edge> edges_;
    std::vector<std::uint32_t> target_degrees_;
    std::size_t self_loops_removed_ = 0;
    std::size_t multi_edges_removed_ = 0;
};

// Stub/edge budget for sampling. Node ids are 32-bit; beyond this the
// adjacency arrays alone would run to tens of gigabytes.
inline constexpr double kMaxSampledStubs = 2.0e9;

namespace detail {

// Erdos-Renyi G(n, p) by geometric skipping over the lower triangle.
inline std::vector<SampledGraph::Edge> erdos_renyi_edges(std::size_t n, double p, rng::Engine& eng) {
    std::vector<SampledGraph::Edge> edges;
    if (n < 2 || p <= 0) return edges;
    edges.reserve(static_cast<std::size_t>(p * 0.5 * static_cast<double>(n) * static_cast<double>(n - 1) * 1.05) + 16);
    if (p >= 1) {
        for (std::size_t v = 1; v < n; ++v)
            for (std::size_t w = 0; w < v; ++w)
                edges.emplace_back(static_cast<SampledGraph::Node>(w), static_cast<SampledGraph::Node>(v));
        return edges;
    }
    const double log_q = std::log1p(-p);
    std::int64_t v = 1;
    std::int64_t w = -1;
    const auto nn = static_cast<std::int64_t>(n);
    while (v < nn) {
        const double r = rng::uniform01_open_low(eng);
        const double skip = std::floor(std::log(r) / log_q);
        // Skips beyond the remaining triangle terminate the walk.
        if (skip > 4.0 * static_cast<double>(nn) * static_cast<double>(nn)) break;
        w += 1 + static_cast<std::int64_t>(skip);
        while (w >= v && v < nn) {
            w -= v;
            ++v;
        }
        if (v < nn)
            edges.emplace_back(static_cast<SampledGraph::Node>(w), static_cast<SampledGraph::Node>(v));
    }
    return edges;
}

}  // namespace detail

/// Samples a graph realizing `dist` on n_total nodes.
///
/// RandomGaussian draws G(n, p) with p = k/(n-1), k = avg_degree_random of
/// the distribution's own (n_total, avg_path_length). PowerLaw draws a real
/// degree per node from the truncated law, rounds it stochastically, and
/// pairs stubs uniformly (configuration model); self-loops and multi-edges
/// are then removed. Identical (dist, n_total, seed) give identical graphs.
inline SampledGraph sample_graph(const DegreeDistribution& dist, std::size_t n_total, std::uint64_t seed) {
    validate(dist);
    if (n_total < 2) throw DomainError("sample_graph: n_total must be >= 2");
    if (n_total > std::numeric_limits<SampledGraph::Node>::max())
        throw DomainError("sample_graph: n_total exceeds 32-bit node ids");
    auto eng = rng::make_engine(seed, 0x67726170);

    if (const auto* rg = std::get_if<RandomGaussian>(&dist)) {
        const double k = avg_degree_random(rg->n_total, rg->avg_path_length);
        if (k >= static_cast<double>(n_total))
            throw DomainError("sample_graph: average degree " + std::to_string(k) +
                              " infeasible for " + std::to_string(n_total) + " nodes");
        if (k * static_cast<double>(n_total) > kMaxSampledStubs)
            throw DomainError("sample_graph: n_total * avg_degree exceeds the sampling budget");
        const double p = std::min(1.0, k / static_cast<double>(n_total - 1));
        return SampledGraph(n_total, detail::erdos_renyi_edges(n_total, p, eng), seed);
    }

    const auto& pl = std::get<PowerLaw>(dist);
    const double k_max = powerlaw_max_degree(pl, static_cast<double>(n_total));
    const double expected = powerlaw_mean_degree(pl, static_cast<double>(n_total)) * static_cast<double>(n_total);
    if (expected > kMaxSampledStubs)
        throw DomainError("sample_graph: expected stub count exceeds the sampling budget");

    std::vector<std::uint32_t> degrees(n_total);
    std::uint64_t total = 0;
    for (auto& d : degrees) {
        const std::uint64_t k = stochastic_round(eng, sample_powerlaw_degree(eng, pl, k_max));
        if (k >= n_total)
            throw DomainError("sample_graph: infeasible degree sequence (degree " + std::to_string(k) +
                              " >= n_total " + std::to_string(n_total) + ")");
        d = static_cast<std::uint32_t>(k);
        total += k;
    }
    if (total % 2 != 0) {
        const auto i = rng::uniform_index(eng, n_total);
        if (degrees[i] + 1 >= n_total)
            throw DomainError("sample_graph: infeasible degree sequence after parity fix");
        ++degrees[i];
        ++total;
    }

    std::vector<SampledGraph::Node> stubs;
    stubs.reserve(total);
    for (std::size_t v = 0; v < n_total; ++v)
        stubs.insert(stubs.end(), degrees[v], static_cast<SampledGraph::Node>(v));
    for (std::size_t i = stubs.size(); i > 1; --i)
        std::swap(stubs[i - 1], stubs[rng::uniform_index(eng, i)]);

    std::vector<SampledGraph::Edge> edges;
    edges.reserve(stubs.size() / 2);
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) edges.emplace_back(stubs[i], stubs[i + 1]);

    SampledGraph g(n_total, std::move(edges), seed);
    g.set_target_degrees(std::move(degrees));
    return g;
}

// ---------------------------------------------------------------------------
// Path length measurement

struct ComponentStats {
    std::size_t n_components = 0;
    std::size_t giant_size = 0;
    std::vector<std::uint32_t> label;   // component id per node
    std::uint32_t giant_label = 0;
};

inline ComponentStats connected_components(const SampledGraph& g) {
    ComponentStats cs;
    constexpr auto unset = std::numeric_limits<std::uint32_t>::max();
    cs.label.assign(g.n_nodes(), unset);
    std::vector<SampledGraph::Node> queue;
    for (std::size_t s = 0; s < g.n_nodes(); ++s) {
        if (cs.label[s] != unset) continue;
        const auto id = static_cast<std::uint32_t>(cs.n_components++);
        queue.assign(1, static_cast<SampledGraph::Node>(s));
        cs.label[s] = id;
        for (std::size_t head = 0; head < queue.size(); ++head)
            for (auto u : g.neighbors(queue[head]))
                if (cs.label[u] == unset) {
                    cs.label[u] = id;
                    queue.push_back(u);
                }
        if (queue.size() > cs.giant_size) {
            cs.giant_size = queue.size();
            cs.giant_label = id;
        }
    }
    return cs;
}

/// How many BFS sources to use. `all` is exact.
struct SourceSample {
    static constexpr std::size_t all = 0;
    std::size_t count = all;
    std::uint64_t seed = 0;
};

inline constexpr std::size_t kExactPathLengthLimit = 20000;
inline constexpr std::size_t kDefaultSampledSources = 256;

/// Default policy: exact up to kExactPathLengthLimit nodes, 256 sources above.
inline SourceSample default_source_sample(const SampledGraph& g) {
    return g.n_nodes() <= kExactPathLengthLimit ? SourceSample{SourceSample::all, g.seed()}
                                                : SourceSample{kDefaultSampledSources, g.seed()};
}

struct PathLengthResult {
    double mean = 0;
    double std_error = 0;       // zero when exact
    bool exact = false;
    std::size_t n_sources = 0;
    std::size_t giant_size = 0;
    std::size_t n_components = 0;
    double coverage = 0;         // giant_size / n_nodes
};

inline constexpr double kMinGiantCoverage = 0.9;

/// Mean shortest-path hop count over pairs in the giant component.
///
/// BFS runs 64 sources at a time, one bit per source in a per-node word.
/// Sources are processed in a fixed order and reduced by plain summation,
/// so the result does not depend on scheduling.
inline PathLengthResult measure_avg_path_length(const SampledGraph& g, SourceSample sample) {
    const std::size_t n = g.n_nodes();
    if (n < 2) throw GraphError("measure_avg_path_length: graph has fewer than two nodes", n, n, n);
    const auto cs = connected_components(g);
    PathLengthResult res;
    res.giant_size = cs.giant_size;
    res.n_components = cs.n_components;
    res.coverage = static_cast<double>(cs.giant_size) / static_cast<double>(n);
    if (cs.giant_size < 2 || res.coverage < kMinGiantCoverage)
        throw GraphError("measure_avg_path_length: giant component covers " +
                             std::to_string(cs.giant_size) + " of " + std::to_string(n) +
                             " nodes (" + std::to_string(cs.n_components) + " components)",
                         n, cs.n_components, cs.giant_size);

    std::vector<SampledGraph::Node> giant;
    giant.reserve(cs.giant_size);
    for (std::size_t v = 0; v < n; ++v)
        if (cs.label[v] == cs.giant_label) giant.push_back(static_cast<SampledGraph::Node>(v));

    std::vector<SampledGraph::Node> sources;
    res.exact = sample.count == SourceSample::all || sample.count >= giant.size();
    if (res.exact) {
        sources = giant;
    } else {
        auto eng = rng::make_engine(sample.seed, 0x62667321);
        auto pool = giant;
        for (std::size_t i = 0; i < sample.count; ++i)
            std::swap(pool[i], pool[i + rng::uniform_index(eng, pool.size() - i)]);
        sources.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(sample.count));
        std::sort(sources.begin(), sources.end());
    }
    res.n_sources = sources.size();

    const double pairs_per_source = static_cast<double>(giant.size() - 1);
    std::vector<std::uint64_t> visited(n), frontier(n), next(n);
    std::vector<double> per_source(sources.size(), 0.0);
    long double total = 0;

    for (std::size_t base = 0; base < sources.size(); base += 64) {
        const std::size_t width = std::min<std::size_t>(64, sources.size() - base);
        const std::uint64_t full = width == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << width) - 1);
        std::fill(visited.begin(), visited.end(), 0);
        std::fill(frontier.begin(), frontier.end(), 0);
        for (std::size_t i = 0; i < width; ++i) {
            visited[sources[base + i]] |= std::uint64_t{1} << i;
            frontier[sources[base + i]] |= std::uint64_t{1} << i;
        }
        std::uint64_t level = 0;
        bool grew = true;
        while (grew) {
            ++level;
            grew = false;
            for (const auto v : giant) {
                if (visited[v] == full) {
                    next[v] = 0;
                    continue;
                }
                std::uint64_t acc = 0;
                for (const auto u : g.neighbors(v)) acc |= frontier[u];
                next[v] = acc & ~visited[v];
            }
            for (const auto v : giant) {
                const std::uint64_t fresh = next[v];
                frontier[v] = fresh;
                if (fresh == 0) continue;
                grew = true;
                visited[v] |= fresh;
                if (res.exact) {
                    total += static_cast<long double>(std::popcount(fresh)) * level;
                } else {
                    for (std::uint64_t bits = fresh; bits != 0; bits &= bits - 1)
                        per_source[base + static_cast<std::size_t>(std::countr_zero(bits))] += static_cast<double>(level);
                }
            }
        }
    }

    if (res.exact) {
        res.mean = static_cast<double>(total / (static_cast<long double>(sources.size()) * pairs_per_source));
        res.std_error = 0;
        return res;
    }
    double sum = 0;
    for (auto& s : per_source) {
        s /= pairs_per_source;
        sum += s;
    }
    const double m = sum / static_cast<double>(per_source.size());
    double ss = 0;
    for (const auto s : per_source) ss += (s - m) * (s - m);
    const double k = static_cast<double>(per_source.size());
    res.mean = m;
    res.std_error = per_source.size() > 1 ? std::sqrt(ss / (k - 1) / k) : 0.0;
    return res;
}

inline PathLengthResult measure_avg_path_length(const SampledGraph& g) {
    return measure_avg_path_length(g, default_source_sample(g));
}

}  // namespace lightcone::graph
