#ifndef LCL_ARITH_HPP
#define LCL_ARITH_HPP

#include <cstdint>
#include <vector>

namespace lcl {

// Sieved completely multiplicative data for 1..limit.
// lambda(n) = (-1)^Omega(n); mu(n) = lambda(n) on squarefree n, else 0;
// gpf(n) = greatest prime factor, with gpf(1) = 1 so the predicate
// "gpf(n) > Q" is false at n = 1 for any Q >= 1.
struct FactorSieve {
    std::uint64_t limit = 0;
    std::vector<std::int8_t> lambda;   // index 0 unused
    std::vector<std::int8_t> mu;
    std::vector<std::uint32_t> gpf;
    std::vector<std::uint32_t> spf;    // smallest prime factor, spf(1) = 1
    std::vector<std::uint32_t> primes;

    bool contains(std::uint64_t n) const { return n >= 1 && n <= limit; }
};

struct SieveTriple {
    int lambda;
    int mu;
    std::uint64_t gpf;
};

FactorSieve build_factor_sieve(std::uint64_t limit);

// Range-checked lookup of (lambda, mu, gpf).
SieveTriple query(const FactorSieve& sieve, std::uint64_t n);

// Psi(x,y): exact count of n <= x all of whose prime factors are <= y.
// n = 1 counts for every y as long as x >= 1.  Requires floor(x) <= sieve.limit.
std::uint64_t smooth_count(const FactorSieve& sieve, double x, double y);

// Ascending primes <= limit, without the rest of the sieve.
std::vector<std::uint32_t> primes_up_to(std::uint64_t limit);

}  // namespace lcl

#endif
