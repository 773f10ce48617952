#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace diana {

// std::mt19937_64's output sequence is pinned by the standard, but the
// distribution adaptors in <random> are not. Samplers are spelled out here so
// runs reproduce bit-for-bit across standard libraries.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Uniform in [0, 1), 53 bits of precision.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_real(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

// Uniform in [0, n). Modulo bias is negligible at simulation scales.
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
    return n == 0 ? 0 : rng() % n;
}

inline double exponential(std::mt19937_64& rng, double mean) {
    return -mean * std::log1p(-uniform01(rng));
}

}  // namespace diana
