#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "lcl/errors.hpp"
#include "lcl/rmt.hpp"
#include "lcl/rng.hpp"

using namespace lcl;
using cd = std::complex<double>;

TEST_CASE("haar sample basics") {
    CHECK_THROWS_AS(sample_haar_unitary(0, 1, 3), std::invalid_argument);

    auto one = sample_haar_unitary(1, 7, 6, true);
    for (auto p : one.power_traces) CHECK(std::abs(std::abs(p) - 1.0) < 1e-13);

    auto a = sample_haar_unitary(6, 42, 10, true);
    auto b = sample_haar_unitary(6, 42, 10);
    for (int j = 0; j < 10; ++j) REQUIRE(a.power_traces[j] == b.power_traces[j]);

    // unitarity residual
    const Eigen::MatrixXcd& A = *a.matrix;
    const Eigen::MatrixXcd res = A.adjoint() * A - Eigen::MatrixXcd::Identity(6, 6);
    CHECK(res.cwiseAbs().maxCoeff() < 1e-12);

    // |p_j| <= N
    for (auto p : a.power_traces) CHECK(std::abs(p) <= 6.0 + 1e-12);
}

TEST_CASE("power traces of a diagonal unitary") {
    // build the sample by hand: diagonal phases
    RmtSample s;
    s.N = 3;
    Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(3, 3);
    const double th[3] = {0.3, 1.7, -2.2};
    for (int i = 0; i < 3; ++i) D(i, i) = std::polar(1.0, th[i]);
    for (int j = 1; j <= 5; ++j) {
        cd want = 0.0;
        for (int i = 0; i < 3; ++i) want += std::polar(1.0, j * th[i]);
        s.power_traces.push_back(want);
    }
    s.matrix = D;
    // generating identity validates the trace/diagonal relation
    auto g = generating_check(s, cd(0.4, 0.1), 5);
    CHECK(std::abs(g.lhs - g.rhs) <= g.bound);
}

TEST_CASE("newton recurrence basics") {
    std::vector<cd> p = {cd(2.0), cd(2.0), cd(2.0), cd(2.0)};  // identity on C^2
    auto h = sym_traces(p);
    CHECK(h[0] == cd(1.0));
    CHECK(std::abs(h[1] - cd(2.0)) < 1e-14);
    CHECK(std::abs(h[2] - cd(3.0)) < 1e-14);  // dim Sym^2 C^2
    CHECK(std::abs(h[3] - cd(4.0)) < 1e-14);
    CHECK(std::abs(h[4] - cd(5.0)) < 1e-14);

    // h_2 = (p_1^2 + p_2)/2 for generic complex traces
    std::vector<cd> q = {cd(0.3, -1.1), cd(0.9, 0.4)};
    auto hq = sym_traces(q);
    CHECK(std::abs(hq[2] - 0.5 * (q[0] * q[0] + q[1])) < 1e-14);
}

TEST_CASE("generating identity for sampled matrices") {
    for (int i = 0; i < 25; ++i) {
        auto s = sample_haar_unitary(5, keyed_u64(1234, i), 60, true);
        auto g = generating_check(s, cd(0.5), 60);
        REQUIRE(g.bound < 1e-12);
        REQUIRE(std::abs(g.lhs - g.rhs) <= g.bound);
    }
    auto s = sample_haar_unitary(4, 9, 10, true);
    auto z0 = generating_check(s, cd(0.0), 10);
    CHECK(z0.lhs == cd(1.0));
    CHECK(z0.rhs == cd(1.0));
    CHECK_THROWS_AS(generating_check(s, cd(0.95), 10), std::domain_error);
    auto no_mat = sample_haar_unitary(4, 9, 10);
    CHECK_THROWS_AS(generating_check(no_mat, cd(0.5), 10), std::invalid_argument);

    // N=1: geometric series 1/(1 - z e^{i theta})
    auto s1 = sample_haar_unitary(1, 77, 40, true);
    auto g1 = generating_check(s1, cd(0.5, 0.2), 40);
    const cd eig = (*s1.matrix)(0, 0);
    CHECK(std::abs(g1.lhs - 1.0 / (1.0 - cd(0.5, 0.2) * eig)) < 1e-12);
}

TEST_CASE("sampler calibration: power-trace moments") {
    for (auto [N, j] : {std::pair<int, int>{5, 1}, {5, 3}, {5, 8}}) {
        auto m = mc_power_trace_moment(N, j, 4000, 2024);
        REQUIRE(std::abs(m.mean.real()) <= 4.0 * m.stderr_re);
        REQUIRE(std::abs(m.mean.imag()) <= 4.0 * m.stderr_im);
        const double want = std::min(j, N);
        REQUIRE(std::abs(m.mean_abs_sq - want) <= 4.0 * m.stderr_abs_sq);
    }
}

TEST_CASE("E |tr Sym^k|^2 = 1 and N=1 degeneracy") {
    auto m = mc_sym_abs_moment(2, 3, 4000, 31337);
    CHECK(std::abs(m.mean_abs_sq - 1.0) <= 4.0 * m.stderr_abs_sq);

    auto d = mc_sym_abs_moment(1, 9, 100, 5);
    CHECK(std::abs(d.mean_abs - 1.0) < 1e-12);
    CHECK(d.stderr_abs < 1e-12);
}

TEST_CASE("haar left-invariance smoke test") {
    // compare E Re tr(A) with E Re tr(U0 A) for a fixed permutation U0
    const int N = 4, T = 4000;
    Eigen::MatrixXcd U0 = Eigen::MatrixXcd::Zero(N, N);
    U0(0, 1) = 1.0;
    U0(1, 2) = 1.0;
    U0(2, 3) = 1.0;
    U0(3, 0) = 1.0;
    std::vector<double> plain(T), rotated(T);
    for (int t = 0; t < T; ++t) {
        auto s = sample_haar_unitary(N, keyed_u64(888, t), 1, true);
        plain[t] = s.power_traces[0].real();
        rotated[t] = (U0 * (*s.matrix)).trace().real();
    }
    auto mean = [&](const std::vector<double>& v) {
        double acc = 0.0;
        for (double x : v) acc += x;
        return acc / v.size();
    };
    auto sd = [&](const std::vector<double>& v, double m) {
        double acc = 0.0;
        for (double x : v) acc += (x - m) * (x - m);
        return std::sqrt(acc / (v.size() - 1.0) / v.size());
    };
    const double m1 = mean(plain), m2 = mean(rotated);
    const double se = std::hypot(sd(plain, m1), sd(rotated, m2));
    CHECK(std::abs(m1 - m2) <= 5.0 * se);
}

TEST_CASE("mc results invariant to worker count") {
    auto a = mc_sym_abs_moment(3, 5, 500, 99, 1);
    auto b = mc_sym_abs_moment(3, 5, 500, 99, 2);
    auto c = mc_sym_abs_moment(3, 5, 500, 99, 8);
    CHECK(a.mean_abs == b.mean_abs);
    CHECK(a.mean_abs == c.mean_abs);
    CHECK(a.stderr_abs_sq == c.stderr_abs_sq);
}

TEST_CASE("sym-trace sweep along k at N = 10, regression-pinned") {
    // conjectural decay statistic: values pinned, trend reported only
    const struct {
        int k;
        double mean_abs;
    } pins[] = {{5, 0.80561113228471481},
                {10, 0.75798530123825125},
                {20, 0.77486691081568337},
                {30, 0.74118226038412105}};
    double first = 0.0, last = 0.0;
    for (auto& p : pins) {
        auto m = mc_sym_abs_moment(10, p.k, 2000, keyed_u64(777000, p.k), 2);
        REQUIRE(m.mean_abs == doctest::Approx(p.mean_abs).epsilon(1e-9));
        if (p.k == 5) first = m.mean_abs;
        if (p.k == 30) last = m.mean_abs;
    }
    MESSAGE("E|h_k| at k=5: ", first, " -> k=30: ", last,
            (last < first ? " (decreasing, as the number-theory analogy suggests)"
                          : " (no decrease at this depth)"));
}
