#pragma once

// Command-line front end. Kept in a header so the tests can drive it
// in-process; main.cpp only forwards argv.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lightcone/lightcone.hpp"

namespace lightcone::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2 };

enum class Format { csv, table };

// Everything a subcommand produces. Nothing is written until the command
// has finished, so a failing command leaves no partial output behind.
struct Output {
    std::ostringstream stdout_text;
    std::vector<std::pair<std::string, std::string>> files;  // name, contents
};

struct GlobalOptions {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    Format format = Format::csv;
};

inline std::vector<double> log_grid(double lo, double hi, int points_per_decade) {
    if (!(lo > 0) || !(hi >= lo) || !std::isfinite(hi) || points_per_decade < 1)
        throw ConfigError("empty or invalid grid [" + std::to_string(lo) + ", " + std::to_string(hi) + "] at " +
                          std::to_string(points_per_decade) + " points per decade");
    const auto steps = static_cast<int>(std::floor(std::log10(hi / lo) * points_per_decade + 1e-9));
    std::vector<double> out;
    for (int i = 0; i <= steps; ++i) out.push_back(lo * std::pow(10.0, static_cast<double>(i) / points_per_decade));
    return out;
}

inline void emit_table(Output& out, const GlobalOptions& g, const std::string& file, const csv::Table& t,
                       const std::string& title = {}) {
    if (!g.out_dir.empty()) {
        out.files.emplace_back(file, csv::to_csv(t));
        return;
    }
    if (out.stdout_text.tellp() > 0) out.stdout_text << '\n';
    if (g.format == Format::table) {
        if (!title.empty()) out.stdout_text << title << '\n';
        csv::write_text(out.stdout_text, t);
    } else {
        csv::write_csv(out.stdout_text, t);
    }
}

struct Quantity {
    std::string name;
    double value;
    std::string unit;
};

inline void emit_block(Output& out, const GlobalOptions& g, const std::string& file,
                       const std::vector<Quantity>& qs, const std::string& title) {
    std::ostringstream os;
    if (g.format == Format::table) {
        os << title << '\n';
        for (const auto& q : qs) {
            char line[160];
            std::snprintf(line, sizeof line, "  %-28s %14s %s\n", q.name.c_str(), csv::format_number(q.value).c_str(),
                          q.unit.c_str());
            os << line;
        }
    } else {
        os << "quantity,value,unit\n";
        for (const auto& q : qs) os << q.name << ',' << csv::format_number(q.value) << ',' << q.unit << '\n';
    }
    if (!g.out_dir.empty()) {
        out.files.emplace_back(file, os.str());
        return;
    }
    if (out.stdout_text.tellp() > 0) out.stdout_text << '\n';
    out.stdout_text << os.str();
}

inline config::ExperimentConfig load(const GlobalOptions& g) {
    return g.config_path.empty() ? config::ExperimentConfig{} : config::load_config(g.config_path);
}

// ---------------------------------------------------------------------------
// degree

struct DegreeArgs {
    bool random = false;
    bool powerlaw = false;
    std::vector<double> path_lengths;
    std::vector<double> alphas;
    std::optional<double> k_min, n_min, n_max;
    std::optional<int> points_per_decade;
};

inline void cmd_degree(const DegreeArgs& a, const GlobalOptions& g, Output& out) {
    auto cfg = load(g).degree;
    if (!a.path_lengths.empty()) cfg.path_lengths = a.path_lengths;
    if (!a.alphas.empty()) cfg.alphas = a.alphas;
    if (a.k_min) cfg.k_min = *a.k_min;
    if (a.n_min) cfg.n_min = *a.n_min;
    if (a.n_max) cfg.n_max = *a.n_max;
    if (a.points_per_decade) cfg.points_per_decade = *a.points_per_decade;
    const bool both = !a.random && !a.powerlaw;
    const auto grid = log_grid(cfg.n_min, cfg.n_max, cfg.points_per_decade);

    csv::Table t({"n_total", "param", "avg_degree", "max_degree"});
    if (a.random || both) {
        if (cfg.path_lengths.empty()) throw ConfigError("degree: no path lengths given");
        for (const double L : cfg.path_lengths)
            for (const double n : grid)
                t.add_row({n, L, graph::avg_degree_random(n, L), std::nan("")});
    }
    if (a.powerlaw || both) {
        if (cfg.alphas.empty()) throw ConfigError("degree: no exponents given");
        for (const double alpha : cfg.alphas) {
            const graph::PowerLaw pl{alpha, cfg.k_min, graph::NaturalCutoff{}};
            graph::validate(pl);
            for (const double n : grid)
                t.add_row({n, alpha, graph::powerlaw_mean_degree(pl, n), graph::powerlaw_max_degree(pl, n)});
        }
    }
    emit_table(out, g, "degree.csv", t, "average and maximum degree vs network size");
}

// ---------------------------------------------------------------------------
// pool

struct PoolArgs {
    std::optional<double> v, w, f, f_min, f_max;
    std::optional<int> n, points_per_decade;
    std::optional<std::string> kind;
    bool round_trip = false;
};

inline void cmd_pool(const PoolArgs& a, const GlobalOptions& g, Output& out) {
    auto cfg = load(g).pool;
    auto& p = cfg.platform;
    if (a.v) p.signal_velocity = *a.v;
    if (a.w) p.element_width = *a.w;
    if (a.kind) p.element_kind = *a.kind == "neuron" ? pool::ElementKind::neuron : pool::ElementKind::synapse;
    if (a.n) cfg.dimension = *a.n;
    if (a.f_min) cfg.f_min = *a.f_min;
    if (a.f_max) cfg.f_max = *a.f_max;
    if (a.points_per_decade) cfg.points_per_decade = *a.points_per_decade;
    const pool::PoolOptions opt{a.round_trip || cfg.round_trip};
    pool::validate(p);

    const auto freqs = a.f ? std::vector<double>{*a.f} : log_grid(cfg.f_min, cfg.f_max, cfg.points_per_decade);
    csv::Table t({"frequency", "diameter_m", "area_m2", "population"});
    for (const double f : freqs) {
        const auto r = pool::evaluate_pool(p, {f, cfg.dimension}, opt);
        t.add_row({f, r.diameter, pool::pool_area(p, f, opt), r.population});
    }
    emit_table(out, g, "pool.csv", t, "neuronal pool vs frequency");

    if (g.format == Format::table) {
        const double earth_side = std::sqrt(constants::earth_surface_area);
        emit_block(out, g, "pool_report.csv",
                   {{"signal_velocity", p.signal_velocity, "m/s"},
                    {"element_width", p.element_width, "m"},
                    {"dimension", static_cast<double>(cfg.dimension), ""},
                    {"max_frequency_earth", pool::max_frequency(p, earth_side, opt), "Hz"},
                    {"max_frequency_60km", pool::max_frequency(p, 6e4, opt), "Hz"}},
                   "platform report");
    }
}

// ---------------------------------------------------------------------------
// area

struct AreaArgs {
    std::optional<double> alpha, mean_degree, k_min, k_max, n_min, n_max;
    std::optional<int> points_per_decade;
};

inline void cmd_area(const AreaArgs& a, const GlobalOptions& g, Output& out) {
    auto h = load(g).hardware;
    if (a.alpha) h.alpha = *a.alpha;
    if (a.mean_degree) h.mean_degree = *a.mean_degree;
    if (a.k_min) h.k_min_plot = *a.k_min;
    if (a.k_max) h.k_max_plot = *a.k_max;
    if (a.n_min) h.n_min_plot = *a.n_min;
    if (a.n_max) h.n_max_plot = *a.n_max;
    if (a.points_per_decade) h.points_per_decade = *a.points_per_decade;
    const auto profile = config::effective_profile(h);

    csv::Table nodes({"degree", "node_area_m2"});
    for (const double k : log_grid(h.k_min_plot, h.k_max_plot, h.points_per_decade))
        nodes.add_row({k, hardware::node_area(k, profile)});
    emit_table(out, g, "node_area.csv", nodes, "node area vs degree");

    // Fixed k_min chosen so the reference network has the requested mean.
    const auto pl = graph::powerlaw_with_mean(h.alpha, h.mean_degree, h.n_total);
    graph::validate(pl);
    csv::Table net({"n_total", "network_area_m2"});
    for (const double n : log_grid(h.n_min_plot, h.n_max_plot, h.points_per_decade))
        net.add_row({n, hardware::network_area(n, pl, profile)});
    emit_table(out, g, "network_area.csv", net, "network area vs size (power law)");
}

// ---------------------------------------------------------------------------
// power

struct PowerArgs {
    std::optional<double> degree, frequency, mean_rate, n_total, target_power;
};

inline void cmd_power(const PowerArgs& a, const GlobalOptions& g, Output& out) {
    auto h = load(g).hardware;
    if (a.degree) h.neuron_degree = *a.degree;
    if (a.frequency) h.neuron_frequency = *a.frequency;
    if (a.mean_rate) h.mean_rate = *a.mean_rate;
    if (a.n_total) h.n_total = *a.n_total;
    if (a.target_power) h.target_power = *a.target_power;
    const auto profile = config::effective_profile(h);

    const auto neuron = hardware::neuron_power(h.neuron_degree, h.neuron_frequency, profile);
    emit_block(out, g, "neuron_power.csv",
               {{"photon_energy", hardware::photon_energy(profile.wavelength), "J"},
                {"degree", h.neuron_degree, ""},
                {"frequency", h.neuron_frequency, "Hz"},
                {"pulse_energy", neuron.pulse_energy, "J"},
                {"device_power", neuron.device_power, "W"},
                {"wall_power", neuron.wall_power, "W"},
                {"power_density", neuron.power_density, "W/m^2"}},
               "single neuron");

    const auto pl = graph::powerlaw_with_mean(h.alpha, h.mean_degree, h.n_total);
    const double rate = h.mean_rate ? *h.mean_rate : hardware::mean_rate_for_power(h.target_power, h.n_total, pl, profile);
    const auto sys = hardware::system_power(h.n_total, pl, rate, profile);
    emit_block(out, g, "system_power.csv",
               {{"n_total", h.n_total, ""},
                {"mean_degree", hardware::mean_degree(pl, h.n_total), ""},
                {"mean_rate", rate, "Hz"},
                {"network_area", hardware::network_area(h.n_total, pl, profile), "m^2"},
                {"device_power", sys.device_power, "W"},
                {"wall_power", sys.wall_power, "W"},
                {"power_density", sys.power_density, "W/m^2"}},
               "network");
}

// ---------------------------------------------------------------------------
// simulate / sweep

inline void cmd_simulate(const GlobalOptions& g, Output& out) {
    if (g.config_path.empty()) throw ConfigError("simulate: --config is required");
    auto cfg = config::load_config(g.config_path);
    if (!cfg.simulation.present) throw ConfigError("simulate: config has no 'simulation' section");
    if (g.seed) cfg.simulation.sim.seed = *g.seed;
    const auto sc = config::build_sim_config(cfg.simulation);
    const auto trace = sim::run(sc);
    const double window = std::min(cfg.simulation.window_periods * sc.period, sc.duration);
    const auto rep = sim::synchrony_metrics(trace, sc.period, window, cfg.simulation.lock_threshold);

    csv::Table t({"node_id", "fire_time_s"});
    for (const auto& s : trace.spikes) t.add_row({static_cast<double>(s.node), s.time});
    emit_table(out, g, "trace.csv", t, "spike trace");
    emit_block(out, g, "summary.csv",
               {{"n_nodes", static_cast<double>(trace.n_nodes), ""},
                {"n_spikes", static_cast<double>(trace.spikes.size()), ""},
                {"events_processed", static_cast<double>(trace.events_processed), ""},
                {"window", rep.window, "s"},
                {"order_parameter", rep.order_parameter, ""},
                {"lock_threshold", rep.lock_threshold, ""},
                {"locked", rep.locked ? 1.0 : 0.0, ""},
                {"convergence_time", rep.convergence_time.value_or(std::nan("")), "s"}},
               "synchrony summary");
}

inline void cmd_sweep(const GlobalOptions& g, Output& out) {
    auto cfg = load(g).sweep;
    if (g.seed) {
        const auto count = cfg.seeds.size();
        cfg.seeds.clear();
        for (std::size_t i = 0; i < count; ++i) cfg.seeds.push_back(*g.seed + i);
    }
    const auto sw = config::build_sweep_config(cfg);
    const double vT = sw.base.signal_velocity * sw.base.period;
    std::vector<double> diameters;
    for (const double x : cfg.diameters_over_vT) diameters.push_back(x * vT);
    const auto rows = sim::pool_sweep(sw, diameters, cfg.seeds);
    csv::Table t({"diameter_over_vT", "mean_order_parameter", "stderr"});
    for (const auto& r : rows) t.add_row({r.diameter_over_vT, r.mean_order_parameter, r.stderr_order});
    emit_table(out, g, "sweep.csv", t, "order parameter vs pool diameter");
}

// ---------------------------------------------------------------------------
// paper-check

inline bool cmd_paper_check(const GlobalOptions& g, Output& out) {
    const auto results = golden::run_golden_checks();
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& r : results) {
        char line[256];
        std::snprintf(line, sizeof line, "%s  %-20s computed=%s expected=%s %s  [%s]\n", r.passed ? "PASS" : "FAIL",
                      r.id.c_str(), csv::format_number(r.computed).c_str(), csv::format_number(r.expected).c_str(),
                      r.unit.c_str(), golden::describe(r.tolerance).c_str());
        out.stdout_text << line;
        doc.push_back({{"id", r.id},
                       {"description", r.description},
                       {"unit", r.unit},
                       {"computed", r.computed},
                       {"expected", r.expected},
                       {"tolerance", golden::describe(r.tolerance)},
                       {"passed", r.passed}});
    }
    const bool ok = golden::all_passed(results);
    out.stdout_text << (ok ? "all checks passed\n" : "some checks FAILED\n");
    if (!g.out_dir.empty()) out.files.emplace_back("paper_check.json", doc.dump(2) + "\n");
    return ok;
}

// ---------------------------------------------------------------------------

inline void flush(const Output& out, const GlobalOptions& g, std::ostream& os) {
    if (!g.out_dir.empty()) {
        std::filesystem::create_directories(g.out_dir);
        for (const auto& [name, text] : out.files) {
            const auto path = std::filesystem::path(g.out_dir) / name;
            std::ofstream f(path);
            if (!f) throw ConfigError("cannot write '" + path.string() + "'");
            f << text;
        }
    }
    os << out.stdout_text.str();
}

/// Parses argv, runs one subcommand, and returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& os, std::ostream& es) {
    CLI::App app{"lightcone: light-cone scaling model for optoelectronic networks"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    std::string format = "csv";
    std::uint64_t seed = 0;
    app.add_option("--config", g.config_path, "Experiment config file (JSON, SI units)");
    app.add_option("--out", g.out_dir, "Write outputs as files into this directory");
    auto* seed_opt = app.add_option("--seed", seed, "Seed override for simulate/sweep");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "table"}));

    DegreeArgs da;
    auto* degree = app.add_subcommand("degree", "Average/maximum degree vs network size");
    degree->add_flag("--random", da.random, "Random (Gaussian) networks");
    degree->add_flag("--powerlaw", da.powerlaw, "Power-law networks");
    degree->add_option("--path-length", da.path_lengths, "Average path lengths")->delimiter(',');
    degree->add_option("--alpha", da.alphas, "Power-law exponents")->delimiter(',');
    degree->add_option("--k-min", da.k_min, "Minimum degree");
    degree->add_option("--n-min", da.n_min, "Smallest network size");
    degree->add_option("--n-max", da.n_max, "Largest network size");
    degree->add_option("--points-per-decade", da.points_per_decade);

    PoolArgs pa;
    auto* poolc = app.add_subcommand("pool", "Neuronal pool size vs frequency");
    poolc->add_option("--v", pa.v, "Signal velocity [m/s]");
    poolc->add_option("--w", pa.w, "Element width [m]");
    poolc->add_option("--f", pa.f, "Single frequency [Hz]");
    poolc->add_option("--n", pa.n, "Dimension (1, 2, 3)");
    poolc->add_option("--kind", pa.kind, "Element kind")->check(CLI::IsMember({"neuron", "synapse"}));
    poolc->add_option("--f-min", pa.f_min, "Sweep start [Hz]");
    poolc->add_option("--f-max", pa.f_max, "Sweep end [Hz]");
    poolc->add_option("--points-per-decade", pa.points_per_decade);
    poolc->add_flag("--round-trip", pa.round_trip, "Require a reply within the period (halves d)");

    AreaArgs aa;
    auto* area = app.add_subcommand("area", "Node and network area");
    area->add_option("--alpha", aa.alpha, "Power-law exponent");
    area->add_option("--mean-degree", aa.mean_degree, "Mean degree of the reference network");
    area->add_option("--k-min", aa.k_min, "Smallest plotted degree");
    area->add_option("--k-max", aa.k_max, "Largest plotted degree");
    area->add_option("--n-min", aa.n_min, "Smallest plotted network");
    area->add_option("--n-max", aa.n_max, "Largest plotted network");
    area->add_option("--points-per-decade", aa.points_per_decade);

    PowerArgs wa;
    auto* power = app.add_subcommand("power", "Neuron and network power budget");
    power->add_option("--degree", wa.degree, "Fan-out of the single neuron");
    power->add_option("--frequency", wa.frequency, "Firing frequency of the single neuron [Hz]");
    power->add_option("--mean-rate", wa.mean_rate, "Network mean firing rate [Hz]");
    power->add_option("--n-total", wa.n_total, "Network size");
    power->add_option("--target-power", wa.target_power, "Network power used to set the mean rate [W]");

    auto* simulate = app.add_subcommand("simulate", "Run one oscillator network from a config");
    auto* sweep = app.add_subcommand("sweep", "Order parameter vs pool diameter");
    auto* check = app.add_subcommand("paper-check", "Verify reference figures");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, os, es);
        return code == 0 ? kOk : kUsage;
    }
    g.format = format == "table" ? Format::table : Format::csv;
    if (*seed_opt) g.seed = seed;

    Output out;
    try {
        int status = kOk;
        if (degree->parsed()) cmd_degree(da, g, out);
        else if (poolc->parsed()) cmd_pool(pa, g, out);
        else if (area->parsed()) cmd_area(aa, g, out);
        else if (power->parsed()) cmd_power(wa, g, out);
        else if (simulate->parsed()) cmd_simulate(g, out);
        else if (sweep->parsed()) cmd_sweep(g, out);
        else if (check->parsed()) status = cmd_paper_check(g, out) ? kOk : kCheckFailed;
        flush(out, g, os);
        return status;
    } catch (const std::exception& e) {
        es << "error: " << e.what() << '\n';
        return kUsage;
    }
}

}  // namespace lightcone::cli
