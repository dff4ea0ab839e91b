#pragma once

#include <cstdint>
#include <random>

namespace hypertorsion {

// The std distributions are implementation-defined; these conversions are
// not, so a seed reproduces the same stream on every standard library.

using Rng = std::mt19937_64;

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform integer in [0, bound) by rejection (bound > 0).
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do v = rng();
    while (v >= limit);
    return v % bound;
}

}  // namespace hypertorsion
