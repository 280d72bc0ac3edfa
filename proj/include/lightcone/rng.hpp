#pragma once

// Portable seeded random streams.
//
// The standard <random> distributions are implementation-defined, so two
// standard libraries can disagree on the same seed. Everything here is
// built on raw mt19937_64 output, which is fully specified.

#include <cstdint>
#include <random>

namespace lightcone::rng {

using Engine = std::mt19937_64;

// splitmix64 finalizer; decorrelates adjacent seeds and stream ids.
constexpr std::uint64_t mix(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent stream `stream` derived from a base seed.
constexpr std::uint64_t stream_seed(std::uint64_t base, std::uint64_t stream) noexcept {
    return mix(mix(base) ^ (stream * 0xd1b54a32d192ed03ULL));
}

inline Engine make_engine(std::uint64_t seed, std::uint64_t stream = 0) {
    return Engine(stream_seed(seed, stream));
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Engine& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Uniform double in (0, 1]; safe as a log() argument.
inline double uniform01_open_low(Engine& eng) {
    return (static_cast<double>(eng() >> 11) + 1.0) * 0x1.0p-53;
}

// Uniform integer in [0, bound) by rejection, bound > 0.
inline std::uint64_t uniform_index(Engine& eng, std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
        x = eng();
    } while (x >= limit);
    return x % bound;
}

}  // namespace lightcone::rng
