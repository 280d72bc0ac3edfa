#pragma once

// Reference figures for cortex and optoelectronic hardware, each paired with
// the tolerance it is checked at. This manifest is the only place those
// tolerances are written down.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "constants.hpp"
#include "hardware_scaling.hpp"
#include "pool_model.hpp"

namespace lightcone::golden {

enum class ToleranceKind {
    relative,  // |computed/expected - 1| <= value
    factor,    // max(computed/expected, expected/computed) <= value
};

struct Tolerance {
    ToleranceKind kind = ToleranceKind::relative;
    double value = 0;
};

inline bool within(double computed, double expected, Tolerance tol) {
    if (!(computed > 0) || !(expected > 0)) return false;
    if (tol.kind == ToleranceKind::relative) return std::abs(computed / expected - 1.0) <= tol.value;
    return std::max(computed / expected, expected / computed) <= tol.value;
}

inline std::string describe(Tolerance tol) {
    char buf[48];
    if (tol.kind == ToleranceKind::relative)
        std::snprintf(buf, sizeof buf, "+/-%g%%", tol.value * 100);
    else
        std::snprintf(buf, sizeof buf, "factor<=%g", tol.value);
    return buf;
}

// A stated computed value is held to 5%; a value quoted only to its order of
// magnitude is held to a factor of 4.
inline constexpr Tolerance kComputedValue{ToleranceKind::relative, 0.05};
inline constexpr Tolerance kRoundedValue{ToleranceKind::factor, 4.0};

struct GoldenResult {
    std::string id;
    std::string description;
    std::string unit;
    double computed = 0;
    double expected = 0;
    Tolerance tolerance;
    bool passed = false;
};

inline GoldenResult check(std::string id, std::string description, std::string unit, double computed,
                          double expected, Tolerance tol) {
    return {std::move(id), std::move(description), std::move(unit), computed, expected, tol,
            within(computed, expected, tol)};
}

/// Evaluates every reference figure with the library's own operations.
inline std::vector<GoldenResult> run_golden_checks() {
    using namespace lightcone::pool;
    std::vector<GoldenResult> out;

    out.push_back(check("cortex_pool", "cortex neuron pool at 6 Hz (v=2 m/s, w=2.4e-6 m, n=2)", "neurons",
                        pool_population(cortex_neurons(), {6.0, 2}), 1.9e10, kComputedValue));

    out.push_back(check("platform_ratio", "optoelectronic/biological synapse pool ratio (n=2)", "1",
                        pool_ratio(photonic_synapses(1.9e-5), cortex_synapses(), 2), 1e10, kRoundedValue));

    hardware::HardwareProfile hw;
    hw.wavelength = 1.5e-6;
    hw.photons_per_synapse_event = 10;
    hw.source_efficiency = 1e-3;
    out.push_back(check("picojoule_pulse", "energy of a 1e7-photon pulse at 1.5 um", "J",
                        1e7 * hardware::photon_energy(hw.wavelength), 1e-12, kRoundedValue));

    out.push_back(check("milliwatt_neuron", "device power of a 1e6-synapse neuron at 1 MHz, eta=1e-3", "W",
                        hardware::neuron_power(1e6, 1e6, hw).device_power, 1e-3, kRoundedValue));

    out.push_back(check("datacenter_pool", "light-speed pool area at 1 MHz", "m^2",
                        pool_area(photonic_synapses(), 1e6), 1e5, kRoundedValue));

    out.push_back(check("wafer_synapse_width", "synapse width, 2e8 synapses on a 300 mm wafer", "m",
                        hardware::synapse_width_from_wafer(0.3, 2.0e8), 1.9e-5, kComputedValue));
    return out;
}

inline bool all_passed(const std::vector<GoldenResult>& rs) {
    for (const auto& r : rs)
        if (!r.passed) return false;
    return true;
}

}  // namespace lightcone::golden
