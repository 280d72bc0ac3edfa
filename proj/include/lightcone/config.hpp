#pragma once

// Experiment configuration files (JSON, SI units).
//
// Top level:
//   schema_version  integer, must equal kSchemaVersion
//   degree          degree-analysis grid
//   pool            platform and frequency sweep
//   hardware        hardware profile, wafer calibration, power scenario
//   simulation      oscillator network for `simulate`
//   sweep           diameter sweep for `sweep`
// Every section is optional; unknown keys anywhere are an error.

#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "graph_analysis.hpp"
#include "hardware_scaling.hpp"
#include "pool_model.hpp"
#include "simulator.hpp"

namespace lightcone::config {

inline constexpr int kSchemaVersion = 1;

using json = nlohmann::json;

struct DegreeSection {
    double n_min = 1e2;
    double n_max = 1e8;
    int points_per_decade = 1;
    std::vector<double> path_lengths{2, 3, 4};
    std::vector<double> alphas{2, 2.5, 3};
    double k_min = 1;
};

struct PoolSection {
    pool::Platform platform = pool::photonic_synapses();
    int dimension = 2;
    double f_min = 1;
    double f_max = 1e8;
    int points_per_decade = 1;
    bool round_trip = false;
};

struct HardwareSection {
    std::optional<hardware::HardwareProfile> profile;         // explicit footprints
    hardware::WaferCalibration calibration;                   // used when profile is absent
    hardware::HardwareProfile photonics;                      // wavelength, efficiency, cooling
    double alpha = 3.0;
    double mean_degree = 200;
    double n_total = 1e6;
    double k_min_plot = 1;
    double k_max_plot = 1e6;
    double n_min_plot = 1e2;
    double n_max_plot = 1e10;
    int points_per_decade = 1;
    double neuron_degree = 1e6;
    double neuron_frequency = 1e6;
    std::optional<double> mean_rate;                          // Hz
    double target_power = 1.0;                                // W, when mean_rate is absent
};

struct TopologySpec {
    enum class Kind { all_to_all, random, powerlaw } kind = Kind::all_to_all;
    double avg_path_length = 2;
    graph::PowerLaw powerlaw;
};

struct SimulationSection {
    sim::SimConfig sim;
    std::size_t n_nodes = 0;          // used when positions are absent
    double placement_side = 0;        // m, square side for random placement
    TopologySpec topology;
    double window_periods = sim::kDefaultWindowPeriods;
    double lock_threshold = sim::kDefaultLockThreshold;
    bool present = false;
};

struct SweepSection {
    std::vector<double> diameters_over_vT{0.1, 0.5, 1, 2, 4};
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    std::size_t n_nodes = 64;
    double signal_velocity = 1;
    double period = 1;
    double coupling = 0.02;
    double refractory_fraction = 0.2;
    double duration_periods = 50;
    double window_periods = sim::kDefaultWindowPeriods;
    double lock_threshold = sim::kDefaultLockThreshold;
    unsigned threads = 1;
};

struct ExperimentConfig {
    int schema_version = kSchemaVersion;
    DegreeSection degree;
    PoolSection pool;
    HardwareSection hardware;
    SimulationSection simulation;
    SweepSection sweep;
};

namespace detail {

inline void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
}

template <typename T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
    if (!obj.contains(key)) return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(where + "." + key + ": " + e.what());
    }
}

template <typename T>
void read(const json& obj, const char* key, std::optional<T>& out, const std::string& where) {
    if (!obj.contains(key)) return;
    T v{};
    read(obj, key, v, where);
    out = v;
}

inline pool::ElementKind parse_kind(const std::string& s, const std::string& where) {
    if (s == "neuron") return pool::ElementKind::neuron;
    if (s == "synapse") return pool::ElementKind::synapse;
    throw ConfigError(where + ": element_kind must be 'neuron' or 'synapse'");
}

inline pool::Platform parse_platform(const json& j, const std::string& where) {
    check_keys(j, {"signal_velocity", "element_width", "element_kind", "label"}, where);
    pool::Platform p = pool::photonic_synapses();
    read(j, "signal_velocity", p.signal_velocity, where);
    read(j, "element_width", p.element_width, where);
    std::string kind = pool::to_string(p.element_kind);
    read(j, "element_kind", kind, where);
    p.element_kind = parse_kind(kind, where);
    read(j, "label", p.label, where);
    return p;
}

inline hardware::HardwareProfile parse_profile(const json& j, const std::string& where,
                                               hardware::HardwareProfile p = {}) {
    check_keys(j,
               {"synapse_area", "neuron_base_area", "routing_overhead_fraction", "wafer_diameter", "wavelength",
                "photons_per_synapse_event", "source_efficiency", "cooling_overhead"},
               where);
    read(j, "synapse_area", p.synapse_area, where);
    read(j, "neuron_base_area", p.neuron_base_area, where);
    read(j, "routing_overhead_fraction", p.routing_overhead_fraction, where);
    read(j, "wafer_diameter", p.wafer_diameter, where);
    read(j, "wavelength", p.wavelength, where);
    read(j, "photons_per_synapse_event", p.photons_per_synapse_event, where);
    read(j, "source_efficiency", p.source_efficiency, where);
    read(j, "cooling_overhead", p.cooling_overhead, where);
    return p;
}

inline graph::PowerLaw parse_powerlaw(const json& j, const std::string& where) {
    check_keys(j, {"kind", "alpha", "k_min", "k_max"}, where);
    graph::PowerLaw pl;
    read(j, "alpha", pl.alpha, where);
    read(j, "k_min", pl.k_min, where);
    if (j.contains("k_max")) {
        double k_max = 0;
        read(j, "k_max", k_max, where);
        pl.cutoff = graph::ExplicitCutoff{k_max};
    }
    return pl;
}

inline std::vector<sim::Point> parse_positions(const json& j, int dimension, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where + ": positions must be an array");
    std::vector<sim::Point> out;
    for (const auto& p : j) {
        if (!p.is_array() || p.size() != static_cast<std::size_t>(dimension))
            throw ConfigError(where + ": each position needs exactly `dimension` coordinates");
        sim::Point pt{0, 0, 0};
        for (std::size_t d = 0; d < p.size(); ++d) {
            if (!p[d].is_number()) throw ConfigError(where + ": non-numeric coordinate");
            pt[d] = p[d].get<double>();
        }
        out.push_back(pt);
    }
    return out;
}

}  // namespace detail

inline ExperimentConfig parse_config(const json& root) {
    using namespace detail;
    check_keys(root, {"schema_version", "degree", "pool", "hardware", "simulation", "sweep"}, "config");
    if (!root.contains("schema_version")) throw ConfigError("config: missing schema_version");
    ExperimentConfig cfg;
    read(root, "schema_version", cfg.schema_version, "config");
    if (cfg.schema_version != kSchemaVersion)
        throw ConfigError("config: schema_version " + std::to_string(cfg.schema_version) + " is not supported (expected " +
                          std::to_string(kSchemaVersion) + ")");

    if (root.contains("degree")) {
        const auto& j = root["degree"];
        const std::string w = "degree";
        check_keys(j, {"n_min", "n_max", "points_per_decade", "path_lengths", "alphas", "k_min"}, w);
        auto& d = cfg.degree;
        read(j, "n_min", d.n_min, w);
        read(j, "n_max", d.n_max, w);
        read(j, "points_per_decade", d.points_per_decade, w);
        read(j, "path_lengths", d.path_lengths, w);
        read(j, "alphas", d.alphas, w);
        read(j, "k_min", d.k_min, w);
    }

    if (root.contains("pool")) {
        const auto& j = root["pool"];
        const std::string w = "pool";
        check_keys(j, {"platform", "dimension", "f_min", "f_max", "points_per_decade", "round_trip"}, w);
        auto& p = cfg.pool;
        if (j.contains("platform")) p.platform = parse_platform(j["platform"], w + ".platform");
        read(j, "dimension", p.dimension, w);
        read(j, "f_min", p.f_min, w);
        read(j, "f_max", p.f_max, w);
        read(j, "points_per_decade", p.points_per_decade, w);
        read(j, "round_trip", p.round_trip, w);
    }

    if (root.contains("hardware")) {
        const auto& j = root["hardware"];
        const std::string w = "hardware";
        check_keys(j,
                   {"profile", "calibration", "photonics", "alpha", "mean_degree", "n_total", "k_min_plot",
                    "k_max_plot", "n_min_plot", "n_max_plot", "points_per_decade", "neuron_degree",
                    "neuron_frequency", "mean_rate", "target_power"},
                   w);
        auto& h = cfg.hardware;
        if (j.contains("photonics")) h.photonics = parse_profile(j["photonics"], w + ".photonics", h.photonics);
        if (j.contains("profile")) h.profile = parse_profile(j["profile"], w + ".profile", h.photonics);
        if (j.contains("calibration")) {
            const auto& c = j["calibration"];
            const std::string wc = w + ".calibration";
            check_keys(c,
                       {"wafer_diameter", "n_neurons", "n_synapses", "routing_overhead_fraction",
                        "neuron_to_synapse_area", "fill_fraction"},
                       wc);
            read(c, "wafer_diameter", h.calibration.wafer_diameter, wc);
            read(c, "n_neurons", h.calibration.n_neurons, wc);
            read(c, "n_synapses", h.calibration.n_synapses, wc);
            read(c, "routing_overhead_fraction", h.calibration.routing_overhead_fraction, wc);
            read(c, "neuron_to_synapse_area", h.calibration.neuron_to_synapse_area, wc);
            read(c, "fill_fraction", h.calibration.fill_fraction, wc);
        }
        read(j, "alpha", h.alpha, w);
        read(j, "mean_degree", h.mean_degree, w);
        read(j, "n_total", h.n_total, w);
        read(j, "k_min_plot", h.k_min_plot, w);
        read(j, "k_max_plot", h.k_max_plot, w);
        read(j, "n_min_plot", h.n_min_plot, w);
        read(j, "n_max_plot", h.n_max_plot, w);
        read(j, "points_per_decade", h.points_per_decade, w);
        read(j, "neuron_degree", h.neuron_degree, w);
        read(j, "neuron_frequency", h.neuron_frequency, w);
        read(j, "mean_rate", h.mean_rate, w);
        read(j, "target_power", h.target_power, w);
    }

    if (root.contains("simulation")) {
        const auto& j = root["simulation"];
        const std::string w = "simulation";
        check_keys(j,
                   {"positions", "n_nodes", "placement_side", "dimension", "signal_velocity", "period", "frequency",
                    "coupling", "refractory_fraction", "initial_phases", "duration", "duration_periods", "seed",
                    "topology", "event_capacity", "window_periods", "lock_threshold"},
                   w);
        auto& s = cfg.simulation;
        s.present = true;
        auto& c = s.sim;
        read(j, "dimension", c.dimension, w);
        read(j, "signal_velocity", c.signal_velocity, w);
        read(j, "period", c.period, w);
        if (j.contains("frequency")) {
            if (j.contains("period")) throw ConfigError(w + ": give either period or frequency, not both");
            double f = 0;
            read(j, "frequency", f, w);
            if (!(f > 0)) throw ConfigError(w + ".frequency must be positive");
            c.period = 1.0 / f;
        }
        read(j, "coupling", c.coupling, w);
        read(j, "refractory_fraction", c.refractory_fraction, w);
        read(j, "initial_phases", c.initial_phases, w);
        read(j, "duration", c.duration, w);
        if (j.contains("duration_periods")) {
            if (j.contains("duration")) throw ConfigError(w + ": give either duration or duration_periods, not both");
            double k = 0;
            read(j, "duration_periods", k, w);
            c.duration = k * c.period;
        }
        read(j, "seed", c.seed, w);
        read(j, "event_capacity", c.event_capacity, w);
        read(j, "n_nodes", s.n_nodes, w);
        read(j, "placement_side", s.placement_side, w);
        read(j, "window_periods", s.window_periods, w);
        read(j, "lock_threshold", s.lock_threshold, w);
        if (c.dimension < 1 || c.dimension > 3) throw ConfigError(w + ".dimension must be 1, 2 or 3");
        if (j.contains("positions")) c.positions = parse_positions(j["positions"], c.dimension, w + ".positions");
        if (j.contains("topology")) {
            const auto& t = j["topology"];
            if (t.is_string()) {
                if (t.get<std::string>() != "all_to_all")
                    throw ConfigError(w + ".topology: expected \"all_to_all\" or an object");
            } else {
                const std::string wt = w + ".topology";
                std::string kind;
                if (!t.is_object() || !t.contains("kind")) throw ConfigError(wt + ": missing kind");
                read(t, "kind", kind, wt);
                if (kind == "random") {
                    check_keys(t, {"kind", "avg_path_length"}, wt);
                    s.topology.kind = TopologySpec::Kind::random;
                    read(t, "avg_path_length", s.topology.avg_path_length, wt);
                } else if (kind == "powerlaw") {
                    s.topology.kind = TopologySpec::Kind::powerlaw;
                    s.topology.powerlaw = parse_powerlaw(t, wt);
                } else {
                    throw ConfigError(wt + ": kind must be 'random' or 'powerlaw'");
                }
            }
        }
    }

    if (root.contains("sweep")) {
        const auto& j = root["sweep"];
        const std::string w = "sweep";
        check_keys(j,
                   {"diameters_over_vT", "seeds", "n_nodes", "signal_velocity", "period", "coupling",
                    "refractory_fraction", "duration_periods", "window_periods", "lock_threshold", "threads"},
                   w);
        auto& s = cfg.sweep;
        read(j, "diameters_over_vT", s.diameters_over_vT, w);
        read(j, "seeds", s.seeds, w);
        read(j, "n_nodes", s.n_nodes, w);
        read(j, "signal_velocity", s.signal_velocity, w);
        read(j, "period", s.period, w);
        read(j, "coupling", s.coupling, w);
        read(j, "refractory_fraction", s.refractory_fraction, w);
        read(j, "duration_periods", s.duration_periods, w);
        read(j, "window_periods", s.window_periods, w);
        read(j, "lock_threshold", s.lock_threshold, w);
        read(j, "threads", s.threads, w);
    }
    return cfg;
}

inline ExperimentConfig parse_config_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    return parse_config(root);
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

/// Hardware profile in effect: the explicit one, else the wafer calibration.
inline hardware::HardwareProfile effective_profile(const HardwareSection& h) {
    const auto p = h.profile ? *h.profile : hardware::calibrate_profile(h.calibration, h.photonics);
    hardware::validate(p);
    return p;
}

/// Concrete simulation input: random placement and topology are realized
/// from the seed.
inline sim::SimConfig build_sim_config(const SimulationSection& s) {
    sim::SimConfig c = s.sim;
    if (c.positions.empty()) {
        if (s.n_nodes == 0) throw ConfigError("simulation: give positions or n_nodes");
        if (!(s.placement_side >= 0)) throw ConfigError("simulation: placement_side must be >= 0");
        c.positions = sim::uniform_positions(s.n_nodes, c.dimension, s.placement_side, c.seed);
    } else if (s.n_nodes != 0 && s.n_nodes != c.positions.size()) {
        throw ConfigError("simulation: n_nodes disagrees with positions");
    }
    const auto n = c.positions.size();
    switch (s.topology.kind) {
        case TopologySpec::Kind::all_to_all:
            break;
        case TopologySpec::Kind::random:
            c.topology = graph::sample_graph(
                graph::RandomGaussian{static_cast<double>(n), s.topology.avg_path_length}, n, c.seed);
            break;
        case TopologySpec::Kind::powerlaw:
            c.topology = graph::sample_graph(s.topology.powerlaw, n, c.seed);
            break;
    }
    sim::validate(c);
    return c;
}

inline sim::SweepConfig build_sweep_config(const SweepSection& s) {
    sim::SweepConfig sw;
    sw.n_nodes = s.n_nodes;
    sw.base.signal_velocity = s.signal_velocity;
    sw.base.period = s.period;
    sw.base.coupling = s.coupling;
    sw.base.refractory_fraction = s.refractory_fraction;
    sw.base.duration = s.duration_periods * s.period;
    sw.window_periods = s.window_periods;
    sw.lock_threshold = s.lock_threshold;
    sw.threads = s.threads;
    return sw;
}

}  // namespace lightcone::config
