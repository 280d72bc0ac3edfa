#pragma once

// Light-cone limit on synchronizable ensembles: two elements separated by d
// can influence each other within one oscillation period only if d <= v/f.

#include <cmath>
#include <string>

#include "constants.hpp"
#include "errors.hpp"

namespace lightcone::pool {

enum class ElementKind { neuron, synapse };

inline const char* to_string(ElementKind k) { return k == ElementKind::neuron ? "neuron" : "synapse"; }

/// A communication medium and element size pair.
struct Platform {
    double signal_velocity = constants::speed_of_light;  // m/s
    double element_width = 0;                            // m
    ElementKind element_kind = ElementKind::synapse;
    std::string label;
};

// Velocities may exceed c by rounding only (3e8 m/s is accepted as c).
inline constexpr double kMaxVelocity = 1.001 * constants::speed_of_light;

inline void validate(const Platform& p) {
    if (!(p.signal_velocity > 0) || !(p.signal_velocity <= kMaxVelocity))
        throw DomainError("Platform '" + p.label + "': signal velocity must lie in (0, c]");
    if (!(p.element_width > 0) || !std::isfinite(p.element_width))
        throw DomainError("Platform '" + p.label + "': element width must be positive");
}

struct PoolQuery {
    double frequency = 0;  // Hz
    int dimension = 2;
};

inline void validate(const PoolQuery& q) {
    if (!(q.frequency > 0) || !std::isfinite(q.frequency))
        throw DomainError("PoolQuery: frequency must be positive");
    if (q.dimension < 1 || q.dimension > 3) throw DomainError("PoolQuery: dimension must be 1, 2 or 3");
}

struct PoolOptions {
    // Require a reply to reach the originator within the period as well,
    // which halves the reachable diameter. Off by default.
    bool round_trip = false;
};

struct PoolResult {
    double diameter = 0;    // m
    double population = 0;  // elements
    double area = 0;        // m^2; meaningful for dimension 2, zero otherwise
};

/// Largest separation with mutual influence inside one period: v/f.
inline double pool_diameter(const Platform& p, double frequency, PoolOptions opt = {}) {
    validate(p);
    if (!(frequency > 0) || !std::isfinite(frequency))
        throw DomainError("pool_diameter: frequency must be positive");
    const double d = p.signal_velocity / frequency;
    return opt.round_trip ? 0.5 * d : d;
}

/// Number of elements spanning the pool in `dimension` dimensions: (v/(w f))^n.
inline double pool_population(const Platform& p, const PoolQuery& q, PoolOptions opt = {}) {
    validate(q);
    return std::pow(pool_diameter(p, q.frequency, opt) / p.element_width, q.dimension);
}

/// Square-pool area d^2.
inline double pool_area(const Platform& p, double frequency, PoolOptions opt = {}) {
    const double d = pool_diameter(p, frequency, opt);
    return d * d;
}

inline PoolResult evaluate_pool(const Platform& p, const PoolQuery& q, PoolOptions opt = {}) {
    PoolResult r;
    r.diameter = pool_diameter(p, q.frequency, opt);
    r.population = pool_population(p, q, opt);
    r.area = q.dimension == 2 ? r.diameter * r.diameter : 0.0;
    return r;
}

/// Ratio of pool populations between two platforms at any common frequency:
/// (v_a w_b / (w_a v_b))^n. Both platforms must count the same element kind.
inline double pool_ratio(const Platform& a, const Platform& b, int dimension = 2) {
    validate(a);
    validate(b);
    if (a.element_kind != b.element_kind)
        throw DomainError(std::string("pool_ratio: element kinds differ (") + to_string(a.element_kind) +
                          " vs " + to_string(b.element_kind) + ")");
    if (dimension < 1 || dimension > 3) throw DomainError("pool_ratio: dimension must be 1, 2 or 3");
    return std::pow((a.signal_velocity * b.element_width) / (a.element_width * b.signal_velocity), dimension);
}

/// Highest frequency at which `extent` still fits inside one pool.
inline double max_frequency(const Platform& p, double extent, PoolOptions opt = {}) {
    validate(p);
    if (!(extent > 0) || !std::isfinite(extent)) throw DomainError("max_frequency: extent must be positive");
    const double f = p.signal_velocity / extent;
    return opt.round_trip ? 0.5 * f : f;
}

/// separation <= v/f, inclusive at saturation.
inline bool is_integrable(const Platform& p, double separation, double frequency, PoolOptions opt = {}) {
    if (!(separation > 0)) throw DomainError("is_integrable: separation must be positive");
    return separation <= pool_diameter(p, frequency, opt);
}

// Reference platforms.

inline Platform cortex_neurons() {
    return {2.0, 2.4e-6, ElementKind::neuron, "cortex (neurons)"};
}

inline Platform cortex_synapses() {
    return {2.0, 2.4e-8, ElementKind::synapse, "cortex (synapses)"};
}

inline Platform photonic_synapses(double element_width = 1.9e-5) {
    return {constants::speed_of_light, element_width, ElementKind::synapse, "optoelectronic (synapses)"};
}

}  // namespace lightcone::pool
