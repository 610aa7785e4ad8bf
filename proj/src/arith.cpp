#include "lcl/arith.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lcl {

FactorSieve build_factor_sieve(std::uint64_t limit) {
    if (limit == 0) throw std::invalid_argument("build_factor_sieve: limit must be >= 1");

    FactorSieve s;
    s.limit = limit;
    s.lambda.assign(limit + 1, 0);
    s.mu.assign(limit + 1, 0);
    s.gpf.assign(limit + 1, 0);
    s.spf.assign(limit + 1, 0);

    s.lambda[1] = 1;
    s.mu[1] = 1;
    s.gpf[1] = 1;
    s.spf[1] = 1;

    // smallest-prime-factor sieve, then one multiplicative pass n = spf * m
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (s.spf[i] == 0) {
            for (std::uint64_t j = i; j <= limit; j += i)
                if (s.spf[j] == 0) s.spf[j] = static_cast<std::uint32_t>(i);
            s.primes.push_back(static_cast<std::uint32_t>(i));
        }
        const std::uint64_t p = s.spf[i];
        const std::uint64_t m = i / p;
        s.lambda[i] = static_cast<std::int8_t>(-s.lambda[m]);
        s.mu[i] = (s.spf[m] == p) ? std::int8_t{0} : static_cast<std::int8_t>(-s.mu[m]);
        s.gpf[i] = (m == 1) ? static_cast<std::uint32_t>(p) : s.gpf[m];
    }
    return s;
}

SieveTriple query(const FactorSieve& sieve, std::uint64_t n) {
    if (!sieve.contains(n))
        throw std::out_of_range("query: n = " + std::to_string(n) + " outside sieve limit " +
                                std::to_string(sieve.limit));
    return SieveTriple{sieve.lambda[n], sieve.mu[n], sieve.gpf[n]};
}

std::uint64_t smooth_count(const FactorSieve& sieve, double x, double y) {
    if (x < 1.0) return 0;
    const std::uint64_t nx = static_cast<std::uint64_t>(std::floor(x));
    if (nx > sieve.limit)
        throw std::out_of_range("smooth_count: x exceeds sieve limit " + std::to_string(sieve.limit));
    std::uint64_t count = 1;  // n = 1 is y-smooth for every y (empty product)
    for (std::uint64_t n = 2; n <= nx; ++n)
        if (static_cast<double>(sieve.gpf[n]) <= y) ++count;
    return count;
}

std::vector<std::uint32_t> primes_up_to(std::uint64_t limit) {
    std::vector<std::uint32_t> primes;
    if (limit < 2) return primes;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

}  // namespace lcl
