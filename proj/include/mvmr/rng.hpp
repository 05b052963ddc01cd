#pragma once

#include <cstdint>
#include <random>

namespace mvmr {

/// Deterministic RNG for splits and the GA. mt19937_64 itself is fully
/// specified by the standard; the draw helpers below avoid
/// std::uniform_*_distribution, whose output is implementation-defined,
/// so equal seeds give equal results on every platform.
using Rng = std::mt19937_64;

/// Uniform double in [0,1) with 53 random bits.
inline double rand_real(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform index in [0, n). Rejection sampling keeps the draw unbiased.
inline std::size_t rand_index(Rng& rng, std::size_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = rng();
    while (x >= limit) x = rng();
    return static_cast<std::size_t>(x % n);
}

/// Bernoulli draw with success probability p.
inline bool rand_bool(Rng& rng, double p) {
    return rand_real(rng) < p;
}

} // namespace mvmr
