#pragma once

// Area and power budgets for optoelectronic networks.
//
// Node area is a surrogate: affine in degree (one synapse footprint per
// connection on top of a fixed neuron footprint), inflated by a routing
// overhead that stands in for the waveguide fabric. It is calibrated to two
// wafer-scale anchors rather than derived from a layout.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <variant>

#include "constants.hpp"
#include "errors.hpp"
#include "graph_analysis.hpp"
#include "rng.hpp"

namespace lightcone::hardware {

struct HardwareProfile {
    double synapse_area = 3.61e-10;          // m^2
    double neuron_base_area = 1.0e-8;        // m^2
    double routing_overhead_fraction = 0.0;  // extra area per unit of device area
    double wafer_diameter = 0.3;             // m
    double wavelength = 1.5e-6;              // m
    double photons_per_synapse_event = 10;
    double source_efficiency = 1e-3;         // photons out per photon-energy in
    double cooling_overhead = 1000;          // wall watts per device watt
};

inline void validate(const HardwareProfile& p) {
    if (!(p.synapse_area > 0)) throw DomainError("HardwareProfile: synapse_area must be > 0");
    if (!(p.neuron_base_area > 0)) throw DomainError("HardwareProfile: neuron_base_area must be > 0");
    if (!(p.routing_overhead_fraction >= 0))
        throw DomainError("HardwareProfile: routing_overhead_fraction must be >= 0");
    if (!(p.wafer_diameter > 0)) throw DomainError("HardwareProfile: wafer_diameter must be > 0");
    if (!(p.wavelength > 0)) throw DomainError("HardwareProfile: wavelength must be > 0");
    if (!(p.photons_per_synapse_event > 0))
        throw DomainError("HardwareProfile: photons_per_synapse_event must be > 0");
    if (!(p.source_efficiency > 0 && p.source_efficiency <= 1))
        throw DomainError("HardwareProfile: source_efficiency must lie in (0, 1]");
    if (!(p.cooling_overhead >= 1)) throw DomainError("HardwareProfile: cooling_overhead must be >= 1");
}

struct PowerReport {
    double pulse_energy = 0;   // J per firing event
    double device_power = 0;   // W
    double wall_power = 0;     // W, device power times cooling overhead
    double power_density = 0;  // W/m^2 of device power over footprint
};

/// E = h c / lambda.
inline double photon_energy(double wavelength) {
    if (!(wavelength > 0)) throw DomainError("photon_energy: wavelength must be > 0");
    return constants::planck * constants::speed_of_light / wavelength;
}

inline double wafer_area(double wafer_diameter) {
    const double r = 0.5 * wafer_diameter;
    return std::numbers::pi * r * r;
}

/// Synapse pitch when `n_synapses` tile `area` uniformly.
inline double synapse_width_from_area(double area, double n_synapses) {
    if (!(area > 0)) throw DomainError("synapse_width_from_area: area must be > 0");
    if (!(n_synapses >= 1)) throw DomainError("synapse_width_from_area: n_synapses must be >= 1");
    return std::sqrt(area / n_synapses);
}

inline double synapse_width_from_wafer(double wafer_diameter, double n_synapses) {
    if (!(wafer_diameter > 0)) throw DomainError("synapse_width_from_wafer: diameter must be > 0");
    return synapse_width_from_area(wafer_area(wafer_diameter), n_synapses);
}

/// (neuron_base_area + k synapse_area)(1 + routing_overhead_fraction).
inline double node_area(double degree, const HardwareProfile& p) {
    if (!(degree >= 0)) throw DomainError("node_area: degree must be >= 0");
    return (p.neuron_base_area + degree * p.synapse_area) * (1.0 + p.routing_overhead_fraction);
}

/// Expected degree under a distribution description.
inline double mean_degree(const graph::DegreeDistribution& dist, double n_total) {
    if (const auto* rg = std::get_if<graph::RandomGaussian>(&dist))
        return graph::avg_degree_random(rg->n_total, rg->avg_path_length);
    return graph::powerlaw_mean_degree(std::get<graph::PowerLaw>(dist), n_total);
}

/// n_total * E[node_area(k)]; exact because node_area is affine in k.
inline double network_area(double n_total, const graph::DegreeDistribution& dist, const HardwareProfile& p) {
    validate(p);
    if (!(n_total >= 1)) throw DomainError("network_area: n_total must be >= 1");
    return n_total * node_area(mean_degree(dist, n_total), p);
}

namespace detail {

// Degree draw matching the sampled-graph conventions: power-law draws are
// rounded stochastically; Gaussian draws use mean k and variance k.
inline double draw_degree(rng::Engine& eng, const graph::DegreeDistribution& dist, double n_total) {
    if (const auto* pl = std::get_if<graph::PowerLaw>(&dist)) {
        const double k_max = graph::powerlaw_max_degree(*pl, n_total);
        return static_cast<double>(graph::stochastic_round(eng, graph::sample_powerlaw_degree(eng, *pl, k_max)));
    }
    const double k = mean_degree(dist, n_total);
    const double u1 = rng::uniform01_open_low(eng);
    const double u2 = rng::uniform01(eng);
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    return std::max(0.0, k + std::sqrt(k) * z);
}

}  // namespace detail

/// Monte Carlo counterpart of network_area: n_total times the sample mean of
/// node_area over `draws` independent degree draws.
inline double network_area_monte_carlo(double n_total, const graph::DegreeDistribution& dist,
                                       const HardwareProfile& p, std::size_t draws, std::uint64_t seed) {
    validate(p);
    if (draws == 0) throw DomainError("network_area_monte_carlo: draws must be > 0");
    auto eng = rng::make_engine(seed, 0x61726561);
    double sum = 0;
    for (std::size_t i = 0; i < draws; ++i) sum += node_area(detail::draw_degree(eng, dist, n_total), p);
    return n_total * sum / static_cast<double>(draws);
}

/// Optical pulse cost of one firing that reaches `degree` synapses.
inline double pulse_energy(double degree, const HardwareProfile& p) {
    return degree * p.photons_per_synapse_event * photon_energy(p.wavelength) / p.source_efficiency;
}

inline PowerReport neuron_power(double degree, double frequency, const HardwareProfile& p) {
    validate(p);
    if (!(degree >= 1)) throw DomainError("neuron_power: degree must be >= 1");
    if (!(frequency > 0)) throw DomainError("neuron_power: frequency must be > 0");
    PowerReport r;
    r.pulse_energy = pulse_energy(degree, p);
    r.device_power = r.pulse_energy * frequency;
    r.wall_power = r.device_power * p.cooling_overhead;
    r.power_density = r.device_power / node_area(degree, p);
    return r;
}

/// Whole-network totals at a mean firing rate. The density is the per-node
/// ratio, so it is independent of n_total whenever the distribution is.
inline PowerReport system_power(double n_total, const graph::DegreeDistribution& dist, double mean_rate,
                                const HardwareProfile& p) {
    validate(p);
    if (!(mean_rate >= 0)) throw DomainError("system_power: mean_rate must be >= 0");
    if (!(n_total >= 1)) throw DomainError("system_power: n_total must be >= 1");
    const double k = mean_degree(dist, n_total);
    const double area_per_node = node_area(k, p);
    if (!(area_per_node > 0)) throw DomainError("system_power: zero network area");
    PowerReport r;
    r.pulse_energy = pulse_energy(k, p);
    const double per_node_power = r.pulse_energy * mean_rate;
    r.device_power = n_total * per_node_power;
    r.wall_power = r.device_power * p.cooling_overhead;
    r.power_density = per_node_power / area_per_node;
    return r;
}

inline double system_power_density(double n_total, const graph::DegreeDistribution& dist, double mean_rate,
                                   const HardwareProfile& p) {
    return system_power(n_total, dist, mean_rate, p).power_density;
}

/// Sampled-degree counterpart: total sampled pulse power over total sampled
/// node area.
inline double system_power_density_monte_carlo(double n_total, const graph::DegreeDistribution& dist,
                                               double mean_rate, const HardwareProfile& p, std::size_t draws,
                                               std::uint64_t seed) {
    validate(p);
    if (draws == 0) throw DomainError("system_power_density_monte_carlo: draws must be > 0");
    auto eng = rng::make_engine(seed, 0x706f7772);
    double power = 0;
    double area = 0;
    for (std::size_t i = 0; i < draws; ++i) {
        const double k = detail::draw_degree(eng, dist, n_total);
        power += pulse_energy(k, p) * mean_rate;
        area += node_area(k, p);
    }
    if (!(area > 0)) throw DomainError("system_power_density_monte_carlo: zero network area");
    return power / area;
}

/// Mean rate that makes the whole network draw `target_power` watts.
inline double mean_rate_for_power(double target_power, double n_total, const graph::DegreeDistribution& dist,
                                  const HardwareProfile& p) {
    const double per_event = n_total * pulse_energy(mean_degree(dist, n_total), p);
    if (!(per_event > 0)) throw DomainError("mean_rate_for_power: zero pulse energy");
    return target_power / per_event;
}

// ---------------------------------------------------------------------------
// Wafer calibration

struct WaferCalibration {
    double wafer_diameter = 0.3;          // m
    double n_neurons = 1e6;
    double n_synapses = 2e8;
    double routing_overhead_fraction = 1.0;
    double neuron_to_synapse_area = 50;   // neuron footprint in synapse footprints
    double fill_fraction = 0.95;          // usable share of the wafer
};

/// Chooses synapse and neuron footprints so that `n_neurons` nodes carrying
/// `n_synapses` synapses in total occupy fill_fraction of the wafer.
/// Photon and cooling parameters are taken from `base`.
inline HardwareProfile calibrate_profile(const WaferCalibration& c, HardwareProfile base = {}) {
    if (!(c.fill_fraction > 0 && c.fill_fraction <= 1))
        throw DomainError("calibrate_profile: fill_fraction must lie in (0, 1]");
    if (!(c.n_neurons >= 1) || !(c.n_synapses >= 1))
        throw DomainError("calibrate_profile: neuron and synapse counts must be >= 1");
    if (!(c.routing_overhead_fraction >= 0) || !(c.neuron_to_synapse_area > 0))
        throw DomainError("calibrate_profile: invalid overhead or area ratio");
    const double budget = c.fill_fraction * wafer_area(c.wafer_diameter);
    const double synapse_equivalents = c.n_neurons * c.neuron_to_synapse_area + c.n_synapses;
    base.synapse_area = budget / (synapse_equivalents * (1.0 + c.routing_overhead_fraction));
    base.neuron_base_area = c.neuron_to_synapse_area * base.synapse_area;
    base.routing_overhead_fraction = c.routing_overhead_fraction;
    base.wafer_diameter = c.wafer_diameter;
    validate(base);
    return base;
}

}  // namespace lightcone::hardware
