#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <vector>

#include "lcl/arith.hpp"
#include "lcl/rng.hpp"

using namespace lcl;

namespace {

// trial-division reference for lambda/mu/gpf of a single n
struct RefTriple {
    int lambda, mu;
    std::uint64_t gpf;
};

RefTriple factor_ref(std::uint64_t n) {
    RefTriple r{1, 1, 1};
    bool squarefree = true;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0) {
            r.gpf = p;
            if (e > 1) squarefree = false;
            if (e % 2 == 1) r.lambda = -r.lambda;
        }
    }
    if (n > 1) {
        r.gpf = n;
        r.lambda = -r.lambda;
    }
    r.mu = squarefree ? r.lambda : 0;
    return r;
}

// O(x log x) smooth-indicator by trial division, independent of the sieve
std::vector<std::uint8_t> smooth_indicator_ref(std::uint64_t x, double y) {
    std::vector<std::uint8_t> smooth(x + 1, 1);
    if (x >= 1) smooth[0] = 0;
    for (std::uint64_t n = 2; n <= x; ++n) {
        std::uint64_t m = n;
        for (std::uint64_t p = 2; static_cast<double>(p) <= y && p * p <= m; ++p)
            while (m % p == 0) m /= p;
        smooth[n] = (m == 1 || static_cast<double>(m) <= y) ? 1 : 0;
    }
    return smooth;
}

}  // namespace

TEST_CASE("sieve values for n = 1..10") {
    auto s = build_factor_sieve(10);
    const int expect_lambda[] = {1, -1, -1, 1, -1, 1, -1, -1, 1, 1};
    for (std::uint64_t n = 1; n <= 10; ++n) CHECK(s.lambda[n] == expect_lambda[n - 1]);
}

TEST_CASE("sieve edge cases") {
    CHECK_THROWS_AS(build_factor_sieve(0), std::invalid_argument);
    auto s = build_factor_sieve(1);
    CHECK(s.lambda[1] == 1);
    CHECK(s.mu[1] == 1);
    CHECK(s.gpf[1] == 1);
    CHECK(s.primes.empty());
}

TEST_CASE("query matches trial division") {
    auto s = build_factor_sieve(5000);
    auto t12 = query(s, 12);
    CHECK(t12.lambda == -1);
    CHECK(t12.mu == 0);
    CHECK(t12.gpf == 3);
    auto t1 = query(s, 1);
    CHECK(t1.lambda == 1);
    CHECK(t1.mu == 1);
    CHECK(t1.gpf == 1);
    auto t30 = query(s, 30);
    CHECK(t30.lambda == -1);
    CHECK(t30.mu == -1);
    CHECK(t30.gpf == 5);
    for (std::uint64_t n = 1; n <= 5000; ++n) {
        auto got = query(s, n);
        auto want = factor_ref(n);
        REQUIRE(got.lambda == want.lambda);
        REQUIRE(got.mu == want.mu);
        REQUIRE(got.gpf == want.gpf);
    }
    CHECK_THROWS_AS(query(s, 5001), std::out_of_range);
    CHECK_THROWS_AS(query(s, 0), std::out_of_range);
}

TEST_CASE("complete multiplicativity of lambda on random pairs") {
    const std::uint64_t limit = 200000;
    auto s = build_factor_sieve(limit);
    int checked = 0;
    for (std::uint64_t i = 0; checked < 10000; ++i) {
        const std::uint64_t m = 1 + keyed_u64(7, 2 * i) % 1000;
        const std::uint64_t n = 1 + keyed_u64(7, 2 * i + 1) % (limit / m);
        REQUIRE(s.lambda[m * n] == s.lambda[m] * s.lambda[n]);
        ++checked;
    }
}

TEST_CASE("Mertens-type identity sum mu(n) floor(limit/n) = 1") {
    for (std::uint64_t limit : {10ULL, 999ULL, 100000ULL}) {
        auto s = build_factor_sieve(limit);
        std::int64_t acc = 0;
        for (std::uint64_t n = 1; n <= limit; ++n)
            acc += static_cast<std::int64_t>(s.mu[n]) * static_cast<std::int64_t>(limit / n);
        CHECK(acc == 1);
    }
}

TEST_CASE("smooth_count basics") {
    auto s = build_factor_sieve(200);
    CHECK(smooth_count(s, 10, 2) == 4);    // 1,2,4,8
    CHECK(smooth_count(s, 100, 3) == 20);  // 2^a 3^b
    CHECK(smooth_count(s, 57.9, 100) == 57);
    CHECK(smooth_count(s, 0.5, 10) == 0);
    CHECK(smooth_count(s, 1, 0.5) == 1);  // n = 1 is y-smooth for every y
}

TEST_CASE("smooth_count against trial-division brute force") {
    const std::uint64_t x = 100000;
    auto s = build_factor_sieve(x);
    for (double y : {2.0, 3.0, 5.0, 10.0, 30.0, 100.0}) {
        auto ind = smooth_indicator_ref(x, y);
        std::vector<std::uint64_t> prefix(x + 1, 0);
        for (std::uint64_t n = 1; n <= x; ++n) prefix[n] = prefix[n - 1] + ind[n];
        std::vector<std::uint64_t> sample = {1, 2, 10, 100, 1000, 10000, 99999, 100000};
        for (int i = 0; i < 60; ++i) sample.push_back(1 + keyed_u64(11, i) % x);
        for (auto xv : sample)
            REQUIRE(smooth_count(s, static_cast<double>(xv), y) == prefix[xv]);
    }
}

TEST_CASE("smooth-number bound ratio decreasing on the report grid") {
    auto s = build_factor_sieve(1000000);
    double prev = 2.0;
    for (double x : {1e4, 1e5, 1e6}) {
        const double Q = std::exp(std::pow(std::log(x), 1.0 / 3.0));
        const double ratio = static_cast<double>(smooth_count(s, x, Q)) / x;
        const double bound = 1.0 / std::exp(std::pow(std::log(x), 2.0 / 3.0));
        MESSAGE("x=", x, " Q=", Q, " Psi/x=", ratio, " bound=", bound);
        CHECK(ratio < prev);
        prev = ratio;
    }
}

TEST_CASE("primes_up_to") {
    auto p = primes_up_to(30);
    const std::vector<std::uint32_t> want = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
    CHECK(p == want);
    CHECK(primes_up_to(1).empty());
}
