#ifndef LCL_RNG_HPP
#define LCL_RNG_HPP

#include <cmath>
#include <cstdint>

namespace lcl {

// Counter-based randomness: every variate is a pure function of (seed, key),
// so parallel evaluation order cannot change results.

inline std::uint64_t mix64(std::uint64_t z) {
    // splitmix64 finalizer
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

inline std::uint64_t keyed_u64(std::uint64_t seed, std::uint64_t key) {
    return mix64(seed + 0x9e3779b97f4a7c15ULL * (mix64(key) | 1ULL));
}

inline std::uint64_t keyed_u64(std::uint64_t seed, std::uint64_t k1, std::uint64_t k2) {
    return keyed_u64(keyed_u64(seed, k1), k2);
}

// uniform in [0,1)
inline double unit_double(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// uniform in (0,1], safe to feed into log
inline double unit_double_open(std::uint64_t bits) {
    return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

// one standard normal from two counters (Box-Muller, cosine branch)
inline double keyed_normal(std::uint64_t seed, std::uint64_t key) {
    const double u1 = unit_double_open(keyed_u64(seed, 2 * key));
    const double u2 = unit_double(keyed_u64(seed, 2 * key + 1));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

}  // namespace lcl

#endif
