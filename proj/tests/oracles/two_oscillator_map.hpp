#pragma once

// Test-only oracle: two pulse-coupled oscillators iterated fire-to-fire.
//
// Both phases are advanced together in closed form between events; pulses
// in flight are kept per receiver in emission order (the delay is the same
// both ways, so arrivals are FIFO). No priority queue is involved.

#include <algorithm>
#include <deque>
#include <limits>
#include <vector>

namespace oracle {

struct Fire {
    int node;
    double time;
};

struct TwoOscillatorParams {
    double period = 1;
    double delay = 0.1;        // separation / velocity
    double coupling = 0.3;
    double refractory = 0.2;   // fraction of the period
    double phase0 = 0;         // initial phases, s
    double phase1 = 0.5;
    double duration = 100;
};

inline std::vector<Fire> two_oscillator_fire_times(const TwoOscillatorParams& p) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const double T = p.period;
    double phase[2] = {p.phase0, p.phase1};
    std::deque<double> arrivals[2];
    double now = 0;
    std::vector<Fire> fires;

    auto fire = [&](int i) {
        fires.push_back({i, now});
        phase[i] = 0;
        arrivals[1 - i].push_back(now + p.delay);
    };

    for (;;) {
        const double f0 = now + (T - phase[0]);
        const double f1 = now + (T - phase[1]);
        const double a0 = arrivals[0].empty() ? inf : arrivals[0].front();
        const double a1 = arrivals[1].empty() ? inf : arrivals[1].front();
        const double next = std::min({f0, f1, a0, a1});
        if (next > p.duration) break;
        const double dt = next - now;
        phase[0] = std::min(T, phase[0] + dt);
        phase[1] = std::min(T, phase[1] + dt);
        now = next;

        if (next == f0 || next == f1) {
            fire(next == f0 ? 0 : 1);
            continue;
        }
        const int target = next == a0 ? 0 : 1;
        arrivals[target].pop_front();
        if (phase[target] >= p.refractory * T) {
            phase[target] = std::min(T, phase[target] * (1 + p.coupling));
            if (phase[target] >= T) fire(target);
        }
    }
    return fires;
}

}  // namespace oracle
