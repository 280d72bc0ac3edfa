#pragma once

namespace lightcone::constants {

// SI, exact by definition.
inline constexpr double speed_of_light = 2.99792458e8;   // m/s
inline constexpr double planck = 6.62607015e-34;         // J*s

inline constexpr double euler_gamma = 0.57721566490153286061;

inline constexpr double earth_surface_area = 5.1e14;     // m^2

}  // namespace lightcone::constants
