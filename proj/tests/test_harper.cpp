#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <memory>

#include "lcl/arith.hpp"
#include "lcl/characters.hpp"
#include "lcl/errors.hpp"
#include "lcl/harper.hpp"
#include "lcl/rng.hpp"
#include "lcl/steinhaus.hpp"

using namespace lcl;
using cd = std::complex<double>;

TEST_CASE("partition of unity: construction and the four properties") {
    PartitionOfUnity part(6, 0.05);
    CHECK(part.kernel_order() == doctest::Approx(1600.0));

    // (i) exact complementation identity on scattered points
    for (double x : {0.37, -4.2, 6.9, 0.0, 2.5001}) {
        double sum = part.eval(7, x);
        for (int j = -6; j <= 6; ++j) sum += part.eval(j, x);
        REQUIRE(std::abs(sum - 1.0) < 1e-12);
    }

    // (ii) tail bound away from the core interval
    CHECK(part.g(2.0) <= 0.05);
    CHECK(part.g(2.0) >= 0.0);
    // (iii) overflow bump small inside [-N, N]
    for (double x : {0.0, 1.7, -5.3, 6.0}) {
        CHECK(part.eval(7, x) <= 0.05);
        CHECK(part.eval(7, x) >= -1e-12);
    }
    // translate structure g_3(x) = g(x-3), exactly
    CHECK(part.eval(3, 1.234) == part.g(1.234 - 3.0));

    // second construction from the acceptance grid
    PartitionOfUnity part2(10, 0.02);
    CHECK(part2.eval(11, 0.5) <= 0.02);

    CHECK_THROWS_AS(PartitionOfUnity(0, 0.05), std::invalid_argument);
    CHECK_THROWS_AS(PartitionOfUnity(5, 0.7), std::invalid_argument);
    CHECK_THROWS_AS(part.eval(9, 0.0), std::out_of_range);
}

TEST_CASE("partition derivative bounds by central differences") {
    PartitionOfUnity part(6, 0.05);
    const double delta = 0.05;
    const double step = 1e-4;
    double max1 = 0.0, max2 = 0.0, max3 = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double x = -2.0 + i * 0.01;
        const double m2 = part.g(x - 2 * step), m1 = part.g(x - step), p0 = part.g(x);
        const double p1 = part.g(x + step), p2 = part.g(x + 2 * step);
        max1 = std::max(max1, std::abs((p1 - m1) / (2 * step)));
        max2 = std::max(max2, std::abs((p1 - 2 * p0 + m1) / (step * step)));
        max3 = std::max(max3, std::abs((p2 - 2 * p1 + 2 * m1 - m2) / (2 * step * step * step)));
    }
    auto bound = [&](int l) {
        return std::pow(2.0 * 3.14159265358979323846 / delta, l + 1) /
               (3.14159265358979323846 * (l + 1));
    };
    MESSAGE("derivative sup ratios vs (iv): l=1: ", max1 / bound(1), "  l=2: ", max2 / bound(2),
            "  l=3: ", max3 / bound(3));
    CHECK(max1 <= bound(1));  // hard assertion for l = 1 only
}

TEST_CASE("harper parameter validation at desk scale") {
    const double log_x = std::log(1e6);
    auto hp = validate_harper_params(log_x, 10000019ULL, 0.1);
    CHECK_FALSE(hp.p_lattice_exact);
    CHECK(hp.log_P == doctest::Approx(std::pow(log_x, 1.0 / 6.0)));
    CHECK(hp.Q == doctest::Approx(std::exp(std::pow(log_x, 1.0 / 3.0))));
    CHECK(hp.X == doctest::Approx(std::exp(std::pow(log_x, 0.01))));
    CHECK(hp.M == 3);  // round(2 * 1.549^1.02)
    CHECK(hp.Y == 7);
    CHECK(hp.S >= 100);
    CHECK_FALSE(hp.cond_ratios_ok);  // asymptotic condition fails at desk scale
    CHECK_FALSE(hp.cond_moment_ok);
    CHECK_FALSE(hp.preconditions_met);

    // symbolic size x = e^{e^10}
    auto big = validate_harper_params(std::exp(10.0), 10000019ULL, 0.1);
    CHECK(std::isinf(big.x));
    CHECK(big.S >= 100);
    CHECK_FALSE(big.p_lattice_exact);  // lattice admits only log P = 1 here

    // truly astronomical log x reaches the k = 2 lattice point
    auto huge = validate_harper_params(1.3e180 * 1e0 + 0.0 /*placeholder*/, 3, 1.0);
    (void)huge;
    auto lattice = validate_harper_params(std::pow(2.0, 600.0), 10000019ULL, 0.1);
    CHECK(lattice.p_lattice_exact);
    CHECK(lattice.log_P == doctest::Approx(std::pow(2.0, 100.0)));

    CHECK_THROWS_AS(validate_harper_params(0.5, 101, 0.1), std::invalid_argument);
}

TEST_CASE("orthogonality gap vanishes in the perfect regime") {
    auto sieve = build_factor_sieve(5000);
    auto big = build_character_table(10007);
    auto g1 = orthogonality_gap(2, 1, 500, big, WeightChoice::liouville, sieve);
    CHECK(std::abs(g1.gap) <= 1e-9 * (1.0 + std::abs(g1.random_side)));
    auto g2 = orthogonality_gap(1, 1, 100, big, WeightChoice::liouville, sieve);
    CHECK(std::abs(g2.deterministic - cd(100.0)) < 1e-7);
    CHECK(std::abs(g2.random_side - cd(100.0)) == 0.0);

    // interesting regime r < x max(m1,m2): nonzero gap, regression-pinned
    // (both sides are integer-valued sums of +-1 products, so the gap is an
    // exact integer up to DFT roundoff)
    auto t1009 = build_character_table(1009);
    auto g3 = orthogonality_gap(2, 1, 5000, t1009, WeightChoice::liouville, sieve);
    MESSAGE("r=1009 x=5000 m=(2,1) gap = ", g3.gap.real(), " + ", g3.gap.imag(),
            "i, normalized = ", g3.normalized);
    CHECK(std::abs(g3.gap - cd(-226.0)) < 1e-9);
    CHECK(g3.normalized == doctest::Approx(0.10730620370154995).epsilon(1e-9));
}

TEST_CASE("dtilde and the even-moment bracket") {
    CHECK(dtilde(12, {2, 3}) == 6);
    CHECK(dtilde(1, {2, 3}) == 1);
    CHECK(dtilde(35, {2, 3}) == 1);

    auto sieve = build_factor_sieve(200);
    const std::vector<std::uint32_t> pset = {2, 3};
    const std::vector<cd> a(4, cd(1.0));  // q = 2,3,4,9
    auto res = even_moment_quantities(pset, a, 1, 50, WeightChoice::liouville, sieve);
    CHECK(res.lhs_exact);
    // bracket 2 sum v_q/q = 2(1/2 + 1/3 + 6/4 + 6/9) = 6, and |c|=1 so
    // rhs = 1! * 6 * sum dtilde(n)
    double dsum = 0.0;
    for (std::uint64_t n = 1; n <= 50; ++n) dsum += static_cast<double>(dtilde(n, pset));
    CHECK(res.rhs == doctest::Approx(6.0 * dsum).epsilon(1e-12));
    CHECK(res.ratio == doctest::Approx(res.lhs / res.rhs));

    CHECK_THROWS_AS(even_moment_quantities({}, {}, 1, 50, WeightChoice::liouville, sieve),
                    std::invalid_argument);
    CHECK_THROWS_AS(even_moment_quantities(pset, {cd(2.0), cd(0), cd(0), cd(0)}, 1, 50,
                                           WeightChoice::liouville, sieve),
                    std::invalid_argument);
}

TEST_CASE("even-moment exact path agrees with Monte Carlo") {
    auto sieve = build_factor_sieve(300);
    const std::vector<std::uint32_t> pset = {2, 5};
    std::vector<cd> a = {cd(0.9), cd(0.5, 0.5), cd(-0.7, 0.1), cd(0.3)};  // q = 2,4,5,25
    auto exact = even_moment_quantities(pset, a, 2, 40, WeightChoice::liouville, sieve);
    REQUIRE(exact.lhs_exact);
    // force the MC path by a 4-prime set that contains the same structure? no:
    // instead run MC by calling with the same set but k = 3 clamped... the MC
    // path needs |P| > 3 or k > 2, so compare a k = 2 setup via raw sampling
    const auto qs = std::vector<std::uint64_t>{2, 4, 5, 25};
    const int trials = 20000;
    std::vector<double> vals(trials);
    for (int t = 0; t < trials; ++t) {
        auto sample = sample_steinhaus(300, keyed_u64(4242, t));
        auto f = steinhaus_values(sample, sieve, 300);
        cd qf = 0.0;
        for (std::size_t i = 0; i < qs.size(); ++i)
            qf += a[i] * f[qs[i]] / std::sqrt(static_cast<double>(qs[i]));
        cd s = 0.0;
        for (std::uint64_t n = 1; n <= 40; ++n)
            s += static_cast<double>(sieve.lambda[n]) * f[n];
        vals[t] = std::norm(qf) * std::norm(qf) * std::norm(s);
    }
    double mean = 0.0;
    for (double v : vals) mean += v;
    mean /= trials;
    double var = 0.0;
    for (double v : vals) var += (v - mean) * (v - mean);
    const double se = std::sqrt(var / (trials - 1.0) / trials);
    CHECK(std::abs(exact.lhs - mean) <= 5.0 * se);
}

TEST_CASE("s_statistic hand values and the composition identity") {
    auto sieve = build_factor_sieve(1000);
    const double v1 = s_statistic(0, 2.0, Weights::unit(), WeightChoice::unit, sieve);
    CHECK(v1 == doctest::Approx(1.0 / std::sqrt(2.0) + 0.25).epsilon(1e-12));
    const double v2 = s_statistic(0, 3.0, Weights::unit(), WeightChoice::liouville, sieve);
    CHECK(v2 == doctest::Approx(-1.0 / std::sqrt(2.0) + 0.25 - 1.0 / std::sqrt(3.0) + 1.0 / 6.0)
                    .epsilon(1e-12));
    CHECK(s_statistic(3, 1.5, Weights::unit(), WeightChoice::unit, sieve) == 0.0);

    // S_k(f, c) = S_k(fc, 1) with the composed weight materialized (~100 draws)
    for (int trial = 0; trial < 34; ++trial) {
        auto sample = sample_steinhaus(1000, keyed_u64(777, trial));
        auto f = steinhaus_values(sample, sieve, 1000);
        auto fw = Weights::sample(std::make_shared<const std::vector<cd>>(f));
        auto fc = f;
        for (std::uint64_t n = 1; n <= 1000; ++n) fc[n] *= static_cast<double>(sieve.lambda[n]);
        auto fcw = Weights::sample(std::make_shared<const std::vector<cd>>(std::move(fc)));
        for (int k : {-3, 0, 2}) {
            const double lhs = s_statistic(k, 50.0, fw, WeightChoice::liouville, sieve);
            const double rhs = s_statistic(k, 50.0, fcw, WeightChoice::unit, sieve);
            REQUIRE(std::abs(lhs - rhs) < 1e-12);
        }
    }
}

TEST_CASE("sigma normalization over all index vectors (tiny M, N)") {
    auto sieve = build_factor_sieve(100);
    auto table = build_character_table(101);
    PartitionOfUnity part(2, 0.05);
    SigmaSide side;
    side.kind = SigmaSide::Kind::character;
    side.table = &table;

    const int M = 1;
    double total = 0.0;
    double sigma_min = 1.0;
    std::vector<int> jv(2 * M + 1);
    for (int j0 = -2; j0 <= 3; ++j0)
        for (int j1 = -2; j1 <= 3; ++j1)
            for (int j2 = -2; j2 <= 3; ++j2) {
                jv = {j0, j1, j2};
                auto res = sigma_and_conditioned_moment(jv, side, 100, WeightChoice::liouville,
                                                        5.0, 2.0, sieve, part);
                REQUIRE(res.sigma >= -1e-12);
                total += res.sigma;
                sigma_min = std::min(sigma_min, res.sigma);
            }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sigma_min >= -1e-12);
}

TEST_CASE("sigma random side is deterministic and worker-invariant") {
    auto sieve = build_factor_sieve(100);
    PartitionOfUnity part(2, 0.05);
    SigmaSide side;
    side.kind = SigmaSide::Kind::random;
    side.trials = 300;
    side.seed = 12;
    const std::vector<int> jv = {0, 0, 0};
    auto a = sigma_and_conditioned_moment(jv, side, 100, WeightChoice::liouville, 5.0, 11.0, sieve,
                                          part);
    side.threads = 4;
    auto b = sigma_and_conditioned_moment(jv, side, 100, WeightChoice::liouville, 5.0, 11.0, sieve,
                                          part);
    CHECK(a.sigma == b.sigma);
    CHECK(a.conditioned_second_moment == b.conditioned_second_moment);
    CHECK(a.sigma >= 0.0);
}

TEST_CASE("applied sieve sums against quadrature and brute force") {
    auto sieve = build_factor_sieve(10000);
    auto res = applied_sieve_sums(1e4, 10.0, 30.0, 100.0, sieve, 1000.0);

    // brute-force m-loop with numeric quadrature for the inner integral
    double brute1 = 0.0;
    for (std::uint64_t m = 31; m <= 10000; ++m) {
        bool ok = true;
        for (std::uint64_t p = 2; p <= 10 && p * p <= m; ++p)
            if (m % p == 0) ok = false;
        if (m <= 10 || (m > 1 && sieve.spf[m] <= 10)) ok = false;
        if (!ok) continue;
        const double md = static_cast<double>(m);
        const double a = md, b = (1.0 + 1.0 / 100.0) * md;
        const int steps = 200;
        double integral = 0.0;
        for (int i = 0; i <= steps; ++i) {
            const double t = a + (b - a) * i / steps;
            const double f = 1e4 / md - 1e4 / t + 1.0;
            integral += f * ((i == 0 || i == steps) ? 0.5 : 1.0);
        }
        integral *= (b - a) / steps;
        brute1 += 100.0 / md * integral;
    }
    CHECK(res.sum1 == doctest::Approx(brute1).epsilon(1e-6));

    double brute2 = 0.0;
    for (std::uint64_t m = 1; m <= 1000; ++m) {
        if (static_cast<double>(m) <= 1000.0 / 1.01) continue;
        if (m > 1 && sieve.spf[m] <= 10) continue;
        brute2 += 100.0 / static_cast<double>(m);
    }
    CHECK(res.sum2 == doctest::Approx(brute2).epsilon(1e-12));

    // empty range
    auto empty = applied_sieve_sums(100.0, 10.0, 200.0, 50.0, sieve);
    CHECK(empty.sum1 == 0.0);
}

TEST_CASE("euler product and the critical-line integral") {
    auto sieve = build_factor_sieve(1000);
    const cd F = euler_product_F(Weights::unit(), 3.0, cd(2.0), sieve);
    CHECK(std::abs(F - cd(1.5)) < 1e-14);  // (4/3)(9/8)

    auto sample = sample_steinhaus(1000, 99);
    auto values = std::make_shared<const std::vector<cd>>(steinhaus_values(sample, sieve, 1000));
    auto w = Weights::sample(values);
    const cd Fs = euler_product_F(w, 50.0, cd(0.5, 1.3), sieve);
    CHECK(std::abs(Fs) > 0.0);

    auto c1 = critical_integral(w, 50.0, 50.0, 0.02, sieve);
    auto c2 = critical_integral(w, 50.0, 50.0, 0.01, sieve);
    CHECK(c1.value >= 0.0);
    CHECK(std::abs(c1.value - c2.value) < 1e-4 * c2.value);
    CHECK(c1.tail_bound > 0.0);
}

TEST_CASE("perron at tiny x with the unit-weight proxy") {
    auto sieve = build_factor_sieve(100);
    auto res = perron_check(1.2, Weights::unit(), WeightChoice::liouville, 1000003ULL, 1000.0,
                            0.25, 0.5, sieve);
    CHECK(std::abs(res.direct - cd(1.0)) == 0.0);
    CHECK(res.error < 0.05);

    // doubling T0 decreases the error
    auto res2 = perron_check(1.2, Weights::unit(), WeightChoice::liouville, 1000003ULL, 2000.0,
                             0.25, 0.5, sieve);
    CHECK(res2.error < res.error);

    CHECK_THROWS_AS(perron_check(1.2, Weights::unit(), WeightChoice::unit, 7, 1000.0, 0.25, 0.5,
                                 sieve),
                    std::invalid_argument);
    CHECK_THROWS_AS(perron_check(50.0, Weights::unit(), WeightChoice::liouville, 7, 1000.0, 0.25,
                                 0.5, sieve),
                    std::invalid_argument);  // quad_step too coarse for log y
}

TEST_CASE("perron with a real character mod 3, both weight choices") {
    auto sieve = build_factor_sieve(200);
    auto t3 = build_character_table(3);
    auto w = Weights::character(&t3, 1);
    const double x = 100.0, T0 = 500.0;
    const double step = 1.0 / (4.0 * std::log(std::floor(x) + 0.5));
    for (auto c : {WeightChoice::liouville, WeightChoice::mobius}) {
        auto res = perron_check(x, w, c, 3, T0, 0.25, step, sieve, 2);
        MESSAGE("c = ", std::string(c == WeightChoice::liouville ? "lambda" : "mu"),
                ": direct = ", res.direct.real(), ", contour = ", res.contour.real(),
                ", error = ", res.error, ", scale = ", res.perron_scale);
        REQUIRE(std::abs(res.direct.imag()) < 1e-12);
        REQUIRE(res.error <= 2.0 * res.perron_scale);
    }
}

TEST_CASE("perron with sampled weights") {
    auto sieve = build_factor_sieve(20000);
    auto sample = sample_steinhaus(20000, 31);
    auto values = std::make_shared<const std::vector<cd>>(steinhaus_values(sample, sieve, 20000));
    auto w = Weights::sample(values);
    const double x = 30.0, T0 = 200.0;
    const double step = 1.0 / (4.0 * std::log(30.5));
    auto res = perron_check(x, w, WeightChoice::liouville, 1000003ULL, T0, 0.25, step, sieve, 2);
    MESSAGE("sample-weight perron: error = ", res.error, ", scale = ", res.perron_scale);
    CHECK(res.error <= 3.0 * res.perron_scale);
}

TEST_CASE("even-moment ratio stays under the pinned constant on a grid") {
    auto sieve = build_factor_sieve(200);
    double worst = 0.0;
    for (auto& pset : {std::vector<std::uint32_t>{2, 3}, {2, 5}, {3, 7}}) {
        std::vector<std::uint64_t> qs;
        for (auto p : pset) {
            qs.push_back(p);
            qs.push_back(static_cast<std::uint64_t>(p) * p);
        }
        std::sort(qs.begin(), qs.end());
        qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
        const std::vector<cd> a(qs.size(), cd(1.0));
        for (int k : {1, 2})
            for (double x : {30.0, 100.0, 200.0}) {
                auto res = even_moment_quantities(pset, a, k, x, WeightChoice::liouville, sieve);
                REQUIRE(res.lhs_exact);
                REQUIRE(std::isfinite(res.ratio));
                worst = std::max(worst, res.ratio);
            }
    }
    MESSAGE("largest lhs/rhs ratio on the grid: ", worst);
    CHECK(worst <= 0.60);  // pinned from first validated run (measured 0.1205)
}

TEST_CASE("unweighted twists break approximate orthogonality (reported only)") {
    // with c = 1 the deterministic and random second moments diverge once
    // r < x: recorded to document the footnote-level contrast with c = lambda
    auto sieve = build_factor_sieve(5000);
    auto table = build_character_table(101);
    auto unit_gap = orthogonality_gap(2, 1, 5000, table, WeightChoice::unit, sieve);
    auto lambda_gap = orthogonality_gap(2, 1, 5000, table, WeightChoice::liouville, sieve);
    MESSAGE("c=1 normalized gap ", unit_gap.normalized, " vs c=lambda ", lambda_gap.normalized);
    CHECK(std::isfinite(unit_gap.normalized));
}

TEST_CASE("tiny-instance character-side sigma values, regression-pinned") {
    auto sieve = build_factor_sieve(100);
    auto table = build_character_table(101);
    PartitionOfUnity part(2, 0.05);
    SigmaSide side;
    side.kind = SigmaSide::Kind::character;
    side.table = &table;
    const struct {
        std::vector<int> jv;
        double sigma, cond;
    } pins[] = {
        {{0, 0, 0}, 0.2389235125456515, 27.405188216912329},
        {{1, 0, -1}, 0.039911243026406577, 87.121170860753381},
        {{3, 3, 3}, 5.9465181778357708e-12, 193.36874823199787},
    };
    for (auto& p : pins) {
        auto res = sigma_and_conditioned_moment(p.jv, side, 100, WeightChoice::liouville, 5.0,
                                                2.0, sieve, part);
        REQUIRE(res.sigma == doctest::Approx(p.sigma).epsilon(1e-9));
        REQUIRE(res.conditioned_second_moment == doctest::Approx(p.cond).epsilon(1e-9));
    }
}
