#pragma once

// Event-driven simulation of spatially embedded pulse-coupled oscillators.
//
// Each node carries a phase in [0, T) that grows at unit rate. At phase T
// the node fires, resets to 0, and sends a pulse to each neighbor; the pulse
// arrives after dist(i, j) / v. An arriving pulse finding the receiver past
// its refractory window multiplies the receiver's phase by (1 + coupling),
// capped at T, where the receiver fires at once.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <queue>
#include <string>
#include <thread>
#include <vector>

#include "errors.hpp"
#include "graph_analysis.hpp"
#include "rng.hpp"

namespace lightcone::sim {

using Point = std::array<double, 3>;
using NodeId = std::uint32_t;

struct SimConfig {
    std::vector<Point> positions;           // m; unused coordinates stay 0
    int dimension = 2;
    double signal_velocity = 1;             // m/s
    double period = 1;                      // s, natural period T = 1/f
    double coupling = 0.1;                  // phase-advance fraction, [0, 0.5]
    double refractory_fraction = 0.1;       // [0, 0.5)
    std::vector<double> initial_phases;     // s in [0, T); drawn from seed if empty
    double duration = 10;                   // s, >= period
    std::uint64_t seed = 0;
    std::optional<graph::SampledGraph> topology;  // all-to-all when empty
    std::size_t event_capacity = 100'000'000;     // pending-event cap
    bool record_deliveries = false;
};

inline std::size_t node_count(const SimConfig& c) { return c.positions.size(); }

inline void validate(const SimConfig& c) {
    if (c.positions.empty()) throw ConfigError("SimConfig: no nodes");
    if (c.positions.size() > std::numeric_limits<NodeId>::max()) throw ConfigError("SimConfig: too many nodes");
    if (c.dimension < 1 || c.dimension > 3) throw ConfigError("SimConfig: dimension must be 1, 2 or 3");
    for (const auto& p : c.positions)
        for (int d = 0; d < 3; ++d) {
            if (!std::isfinite(p[static_cast<std::size_t>(d)]))
                throw ConfigError("SimConfig: non-finite position");
            if (d >= c.dimension && p[static_cast<std::size_t>(d)] != 0)
                throw ConfigError("SimConfig: position has coordinates beyond `dimension`");
        }
    if (!(c.signal_velocity > 0) || !std::isfinite(c.signal_velocity))
        throw ConfigError("SimConfig: signal_velocity must be positive");
    if (!(c.period > 0) || !std::isfinite(c.period)) throw ConfigError("SimConfig: period must be positive");
    if (!(c.coupling >= 0 && c.coupling <= 0.5)) throw ConfigError("SimConfig: coupling must lie in [0, 0.5]");
    if (!(c.refractory_fraction >= 0 && c.refractory_fraction < 0.5))
        throw ConfigError("SimConfig: refractory_fraction must lie in [0, 0.5)");
    if (!(c.duration >= c.period) || !std::isfinite(c.duration))
        throw ConfigError("SimConfig: duration must be at least one period");
    if (!c.initial_phases.empty()) {
        if (c.initial_phases.size() != c.positions.size())
            throw ConfigError("SimConfig: initial_phases size differs from node count");
        for (const double ph : c.initial_phases)
            if (!(ph >= 0 && ph < c.period)) throw ConfigError("SimConfig: initial phase outside [0, T)");
    }
    if (c.topology && c.topology->n_nodes() != c.positions.size())
        throw ConfigError("SimConfig: topology node count differs from positions");
    if (c.event_capacity == 0) throw ConfigError("SimConfig: event_capacity must be > 0");
}

inline double distance(const Point& a, const Point& b) {
    const double dx = a[0] - b[0];
    const double dy = a[1] - b[1];
    const double dz = a[2] - b[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

inline double propagation_delay(const SimConfig& c, NodeId i, NodeId j) {
    return distance(c.positions[i], c.positions[j]) / c.signal_velocity;
}

struct Spike {
    NodeId node = 0;
    double time = 0;
    friend bool operator==(const Spike&, const Spike&) = default;
};

/// One pulse arrival as seen by its receiver.
struct DeliveryRecord {
    NodeId source = 0;
    NodeId target = 0;
    double emit_time = 0;
    double delivery_time = 0;
    double phase_before = 0;   // s
    double phase_after = 0;    // s; equals phase_before when ignored
    bool triggered_fire = false;
};

struct SpikeTrace {
    std::size_t n_nodes = 0;
    double period = 0;
    double duration = 0;
    std::vector<double> initial_phases;
    std::vector<Spike> spikes;               // chronological, ties in event order
    std::vector<DeliveryRecord> deliveries;  // only with record_deliveries
    std::size_t events_processed = 0;
};

namespace detail {

enum class EventKind : std::uint8_t { fire, deliver };

struct Event {
    double time;
    NodeId source;
    std::uint64_t seq;
    EventKind kind;
    NodeId target;            // receiver for deliveries, firing node otherwise
    std::uint64_t version;    // fire events go stale when the phase changes
    double emit_time;
};

// Min-heap on (time, source, seq).
struct Later {
    bool operator()(const Event& a, const Event& b) const {
        if (a.time != b.time) return a.time > b.time;
        if (a.source != b.source) return a.source > b.source;
        return a.seq > b.seq;
    }
};

struct NodeState {
    double phase = 0;     // s, at `since`
    double since = 0;
    std::uint64_t version = 0;
    double last_fire = -std::numeric_limits<double>::infinity();
};

}  // namespace detail

/// Draws `n` phases uniformly in [0, period).
inline std::vector<double> random_phases(std::size_t n, double period, std::uint64_t seed) {
    auto eng = rng::make_engine(seed, 0x70686173);
    std::vector<double> out(n);
    for (auto& ph : out) ph = std::min(rng::uniform01(eng) * period, std::nextafter(period, 0.0));
    return out;
}

/// Runs the network until `duration` and returns every firing.
inline SpikeTrace run(const SimConfig& config) {
    validate(config);
    const std::size_t n = node_count(config);
    const double T = config.period;
    const double refractory = config.refractory_fraction * T;

    SpikeTrace trace;
    trace.n_nodes = n;
    trace.period = T;
    trace.duration = config.duration;
    trace.initial_phases = config.initial_phases.empty() ? random_phases(n, T, config.seed) : config.initial_phases;

    std::vector<detail::NodeState> nodes(n);
    std::priority_queue<detail::Event, std::vector<detail::Event>, detail::Later> queue;
    std::uint64_t seq = 0;

    auto push = [&](const detail::Event& e) {
        if (queue.size() >= config.event_capacity)
            throw SimulationError("event queue exceeded " + std::to_string(config.event_capacity) +
                                  " pending events at t=" + std::to_string(e.time) + " (n=" + std::to_string(n) +
                                  ", coupling=" + std::to_string(config.coupling) +
                                  ", period=" + std::to_string(T) + ")");
        queue.push(e);
    };
    auto schedule_fire = [&](NodeId i) {
        auto& s = nodes[i];
        ++s.version;
        push({s.since + (T - s.phase), i, seq++, detail::EventKind::fire, i, s.version, 0.0});
    };
    auto fire = [&](NodeId i, double t) {
        auto& s = nodes[i];
        trace.spikes.push_back({i, t});
        s.last_fire = t;
        s.phase = 0;
        s.since = t;
        schedule_fire(i);
        auto send = [&](NodeId j) {
            if (j == i) return;
            push({t + propagation_delay(config, i, j), i, seq++, detail::EventKind::deliver, j, 0, t});
        };
        if (config.topology) {
            for (const auto j : config.topology->neighbors(i)) send(j);
        } else {
            for (NodeId j = 0; j < n; ++j) send(j);
        }
    };

    for (NodeId i = 0; i < n; ++i) {
        nodes[i].phase = trace.initial_phases[i];
        nodes[i].since = 0;
        schedule_fire(i);
    }

    while (!queue.empty()) {
        const detail::Event e = queue.top();
        if (e.time > config.duration) break;
        queue.pop();
        ++trace.events_processed;
        auto& s = nodes[e.target];

        if (e.kind == detail::EventKind::fire) {
            if (e.version != s.version) continue;
            fire(e.target, e.time);
            continue;
        }

        const double before = std::min(T, s.phase + (e.time - s.since));
        double after = before;
        if (before >= refractory) after = std::min(T, before * (1.0 + config.coupling));
        const bool fires = after >= T;
        if (config.record_deliveries)
            trace.deliveries.push_back({e.source, e.target, e.emit_time, e.time, before, after, fires});
        if (fires) {
            fire(e.target, e.time);
        } else if (after != before) {
            s.phase = after;
            s.since = e.time;
            schedule_fire(e.target);
        }
    }

    // A node may not fire again before its refractory window has elapsed.
    if (refractory > 0) {
        std::vector<double> last(n, -std::numeric_limits<double>::infinity());
        for (const auto& sp : trace.spikes) {
            if (sp.time - last[sp.node] < refractory * (1 - 1e-12))
                throw SimulationError("inter-spike interval below refractory bound at node " +
                                      std::to_string(sp.node));
            last[sp.node] = sp.time;
        }
    }
    return trace;
}

// ---------------------------------------------------------------------------
// Synchrony metrics

struct SynchronyReport {
    double order_parameter = 0;              // mean Kuramoto |r| over the window
    bool locked = false;
    double lock_threshold = 0.9;
    std::vector<double> per_node_phase;      // radians in [0, 2pi) at window end
    std::optional<double> convergence_time;  // s
    double window = 0;                       // s
};

inline constexpr double kDefaultLockThreshold = 0.9;
inline constexpr double kDefaultWindowPeriods = 10;

namespace detail {

// Instantaneous phase of one node from its own spike times, linear between
// consecutive spikes and extrapolated with the nearest interval at the ends.
class PhaseTrack {
public:
    PhaseTrack(std::vector<double> spikes, double period) : s_(std::move(spikes)), period_(period) {}

    bool empty() const { return s_.empty(); }

    double at(double t) const {
        constexpr double two_pi = 2 * std::numbers::pi;
        const auto it = std::upper_bound(s_.begin(), s_.end(), t);
        double frac;
        if (it == s_.begin()) {
            const double isi = s_.size() > 1 ? s_[1] - s_[0] : period_;
            frac = 1.0 - (s_[0] - t) / isi;
        } else if (it == s_.end()) {
            const double isi = s_.size() > 1 ? s_.back() - s_[s_.size() - 2] : period_;
            frac = (t - s_.back()) / isi;
        } else {
            const double lo = *(it - 1);
            frac = (t - lo) / (*it - lo);
        }
        frac -= std::floor(frac);
        return two_pi * frac;
    }

private:
    std::vector<double> s_;
    double period_;
};

inline std::vector<PhaseTrack> phase_tracks(const SpikeTrace& trace, double period) {
    std::vector<std::vector<double>> per(trace.n_nodes);
    for (const auto& sp : trace.spikes) per[sp.node].push_back(sp.time);
    std::vector<PhaseTrack> out;
    out.reserve(trace.n_nodes);
    for (auto& v : per) out.emplace_back(std::move(v), period);
    return out;
}

inline double order_at(const std::vector<PhaseTrack>& tracks, double t) {
    std::complex<double> acc{0, 0};
    std::size_t m = 0;
    for (const auto& tr : tracks) {
        if (tr.empty()) continue;
        acc += std::polar(1.0, tr.at(t));
        ++m;
    }
    return m == 0 ? 0.0 : std::min(1.0, std::abs(acc) / static_cast<double>(m));
}

inline constexpr int kSamplesPerPeriod = 64;

inline double mean_order(const std::vector<PhaseTrack>& tracks, double t0, double t1, double period) {
    const auto samples = std::max<std::size_t>(
        kSamplesPerPeriod, static_cast<std::size_t>(std::ceil(kSamplesPerPeriod * (t1 - t0) / period)));
    const double dt = (t1 - t0) / static_cast<double>(samples);
    double sum = 0;
    for (std::size_t k = 0; k < samples; ++k) sum += order_at(tracks, t0 + (static_cast<double>(k) + 0.5) * dt);
    return sum / static_cast<double>(samples);
}

}  // namespace detail

/// Phase coherence over the trailing `window` of the trace.
///
/// Each node's phase advances linearly from one of its spikes to the next,
/// so a node firing at a shifted collective period still reads as coherent.
/// The order parameter is |mean_j exp(i theta_j(t))| averaged over a uniform
/// grid of 64 samples per period; `locked` compares it with the threshold.
inline SynchronyReport synchrony_metrics(const SpikeTrace& trace, double period, double window,
                                         double lock_threshold = kDefaultLockThreshold) {
    if (!(period > 0)) throw DomainError("synchrony_metrics: period must be positive");
    if (!(window > 0) || window > trace.duration * (1 + 1e-12))
        throw DomainError("synchrony_metrics: window must lie in (0, trace duration]");
    const double t1 = trace.duration;
    const double t0 = std::max(0.0, t1 - window);
    const bool any = std::any_of(trace.spikes.begin(), trace.spikes.end(),
                                 [&](const Spike& s) { return s.time >= t0 && s.time <= t1; });
    if (!any) throw DomainError("synchrony_metrics: no spikes inside the analysis window");

    const auto tracks = detail::phase_tracks(trace, period);
    SynchronyReport rep;
    rep.window = t1 - t0;
    rep.lock_threshold = lock_threshold;
    rep.order_parameter = detail::mean_order(tracks, t0, t1, period);
    rep.locked = rep.order_parameter >= lock_threshold;
    rep.per_node_phase.reserve(tracks.size());
    for (const auto& tr : tracks) rep.per_node_phase.push_back(tr.empty() ? 0.0 : tr.at(t1));

    // Start of the earliest period after which every per-period mean stays
    // at or above the threshold.
    const auto n_periods = static_cast<std::size_t>(std::floor(t1 / period));
    std::optional<double> since;
    for (std::size_t k = 0; k < n_periods; ++k) {
        const double a = static_cast<double>(k) * period;
        if (detail::mean_order(tracks, a, a + period, period) >= lock_threshold) {
            if (!since) since = a;
        } else {
            since.reset();
        }
    }
    rep.convergence_time = since;
    return rep;
}

// ---------------------------------------------------------------------------
// Diameter sweep

struct SweepConfig {
    SimConfig base;                 // positions and initial phases are replaced per cell
    std::size_t n_nodes = 64;
    double window_periods = kDefaultWindowPeriods;
    double lock_threshold = kDefaultLockThreshold;
    unsigned threads = 1;
};

struct SweepRow {
    double diameter = 0;             // m
    double diameter_over_vT = 0;
    double mean_order_parameter = 0;
    double stderr_order = 0;
    double locked_fraction = 0;
    std::size_t n_seeds = 0;
};

/// Uniform placement in an axis-aligned cube of side `side` (a square for
/// dimension 2).
inline std::vector<Point> uniform_positions(std::size_t n, int dimension, double side, std::uint64_t seed) {
    auto eng = rng::make_engine(seed, 0x706f7369);
    std::vector<Point> pts(n, Point{0, 0, 0});
    for (auto& p : pts)
        for (int d = 0; d < dimension; ++d) p[static_cast<std::size_t>(d)] = side * rng::uniform01(eng);
    return pts;
}

/// Cell config for one (diameter, seed). Initial phases depend on the seed
/// only, so every diameter starts from the same phases.
inline SimConfig sweep_cell(const SweepConfig& sweep, double diameter, std::uint64_t seed) {
    SimConfig c = sweep.base;
    c.seed = seed;
    c.positions = uniform_positions(sweep.n_nodes, c.dimension, diameter, seed);
    c.initial_phases = random_phases(sweep.n_nodes, c.period, seed);
    c.record_deliveries = false;
    return c;
}

/// Mean order parameter across seeds for each pool diameter.
inline std::vector<SweepRow> pool_sweep(const SweepConfig& sweep, const std::vector<double>& diameters,
                                        const std::vector<std::uint64_t>& seeds) {
    if (diameters.empty()) throw ConfigError("pool_sweep: no diameters");
    if (seeds.empty()) throw ConfigError("pool_sweep: no seeds");
    for (const double d : diameters)
        if (!(d > 0) || !std::isfinite(d)) throw ConfigError("pool_sweep: diameters must be positive");
    if (sweep.n_nodes < 2) throw ConfigError("pool_sweep: need at least two nodes");
    if (sweep.base.topology && sweep.base.topology->n_nodes() != sweep.n_nodes)
        throw ConfigError("pool_sweep: topology node count differs from n_nodes");
    const double window = sweep.window_periods * sweep.base.period;
    if (!(window > 0) || window > sweep.base.duration)
        throw ConfigError("pool_sweep: analysis window must lie in (0, duration]");

    const std::size_t cells = diameters.size() * seeds.size();
    std::vector<double> order(cells);
    std::vector<char> locked(cells);
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(cells);

    auto worker = [&] {
        for (std::size_t c = next++; c < cells; c = next++) {
            try {
                const auto cfg = sweep_cell(sweep, diameters[c / seeds.size()], seeds[c % seeds.size()]);
                const auto rep = synchrony_metrics(run(cfg), cfg.period, window, sweep.lock_threshold);
                order[c] = rep.order_parameter;
                locked[c] = rep.locked ? 1 : 0;
            } catch (...) {
                errors[c] = std::current_exception();
            }
        }
    };
    const unsigned n_threads = std::max(1u, std::min<unsigned>(sweep.threads, static_cast<unsigned>(cells)));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    const double vT = sweep.base.signal_velocity * sweep.base.period;
    std::vector<SweepRow> rows;
    rows.reserve(diameters.size());
    for (std::size_t di = 0; di < diameters.size(); ++di) {
        SweepRow r;
        r.diameter = diameters[di];
        r.diameter_over_vT = diameters[di] / vT;
        r.n_seeds = seeds.size();
        double sum = 0;
        double n_locked = 0;
        for (std::size_t si = 0; si < seeds.size(); ++si) {
            sum += order[di * seeds.size() + si];
            n_locked += locked[di * seeds.size() + si];
        }
        const double k = static_cast<double>(seeds.size());
        r.mean_order_parameter = sum / k;
        double ss = 0;
        for (std::size_t si = 0; si < seeds.size(); ++si) {
            const double x = order[di * seeds.size() + si] - r.mean_order_parameter;
            ss += x * x;
        }
        r.stderr_order = seeds.size() > 1 ? std::sqrt(ss / (k - 1) / k) : 0.0;
        r.locked_fraction = n_locked / k;
        rows.push_back(r);
    }
    return rows;
}

}  // namespace lightcone::sim
