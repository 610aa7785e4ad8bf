#ifndef LCL_STEINHAUS_HPP
#define LCL_STEINHAUS_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "lcl/arith.hpp"
#include "lcl/characters.hpp"

namespace lcl {

// One draw of a Steinhaus random multiplicative function: i.i.d. uniform
// unit-modulus values at the primes, extended completely multiplicatively.
// The phase at p depends only on (seed, p), never on iteration order.
struct SteinhausSample {
    std::uint64_t limit = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint32_t> primes;        // primes <= limit
    std::vector<std::complex<double>> fp;     // fp[i] = f(primes[i])

    std::complex<double> at_prime(std::uint64_t p) const;  // recompute from (seed, p)
};

SteinhausSample sample_steinhaus(std::uint64_t limit, std::uint64_t seed);

// f(n) for n = 1..n_max, materialized through the smallest-prime-factor
// recursion n = spf * m.  Requires n_max <= min(sample.limit, sieve.limit).
std::vector<std::complex<double>> steinhaus_values(const SteinhausSample& sample,
                                                   const FactorSieve& sieve, std::uint64_t n_max);

struct McMoment {
    double estimate = 0.0;
    double stderr_ = 0.0;
    std::uint64_t trials = 0;
};

// Monte Carlo mean of |sum_{n<=x} c(n) f(n)|^{2q} over fresh samples.
// Trial t draws its own sample keyed by (seed, t); the reduction uses a fixed
// pairwise tree, so the result is invariant to the worker count.
McMoment mc_abs_moment(double x, double q, WeightChoice c, std::uint64_t trials,
                       std::uint64_t seed, const FactorSieve& sieve, int threads = 1);

// Exact E_f f(m1) conj(f(m2)) |sum_{n<=x} c(n) f(n)|^2 by perfect
// orthogonality: the surviving pairs are m1*n1 = m2*n2, parametrized by
// n1 = (m2/g) t, n2 = (m1/g) t.  With restrict_mod_r set, pairs with
// r | n1*n2 are dropped (the f* variant).
std::complex<double> random_second_moment_exact(std::uint64_t m1, std::uint64_t m2, double x,
                                                WeightChoice c, const FactorSieve& sieve,
                                                std::optional<std::uint64_t> restrict_mod_r = {});

// Closed form for c = lambda without the r-restriction:
// lambda(u1*u2) * floor(x / max(u1,u2)).
double random_second_moment_closed_form(std::uint64_t m1, std::uint64_t m2, double x,
                                        const FactorSieve& sieve);

}  // namespace lcl

#endif
