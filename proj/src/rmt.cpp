#include "lcl/rmt.hpp"

#include <cmath>
#include <stdexcept>

#include "lcl/errors.hpp"
#include "lcl/parallel.hpp"
#include "lcl/rng.hpp"

namespace lcl {

namespace {

using cd = std::complex<double>;

Eigen::MatrixXcd ginibre(int N, std::uint64_t seed) {
    Eigen::MatrixXcd G(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            const std::uint64_t idx = static_cast<std::uint64_t>(i) * N + j;
            G(i, j) = cd(keyed_normal(seed, 2 * idx), keyed_normal(seed, 2 * idx + 1)) *
                      0.70710678118654752440;
        }
    return G;
}

void mean_and_stderr(const std::vector<double>& v, double& mean, double& se) {
    mean = pairwise_sum(v) / static_cast<double>(v.size());
    std::vector<double> dev(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) dev[i] = (v[i] - mean) * (v[i] - mean);
    const double var = pairwise_sum(dev) / static_cast<double>(v.size() - 1);
    se = std::sqrt(var / static_cast<double>(v.size()));
}

}  // namespace

RmtSample sample_haar_unitary(int N, std::uint64_t seed, int K, bool retain_matrix) {
    if (N < 1) throw std::invalid_argument("sample_haar_unitary: dimension must be >= 1");
    if (K < 0) throw std::invalid_argument("sample_haar_unitary: K must be >= 0");

    Eigen::MatrixXcd G = ginibre(N, seed);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(G);
    Eigen::MatrixXcd Q = qr.householderQ();
    const Eigen::MatrixXcd& QR = qr.matrixQR();
    // absorb the R-diagonal phases: A = Q diag(R_ii/|R_ii|)
    for (int j = 0; j < N; ++j) {
        const cd d = QR(j, j);
        const double ad = std::abs(d);
        Q.col(j) *= (ad > 0.0) ? d / ad : cd(1.0);
    }

    RmtSample s;
    s.N = N;
    s.seed = seed;
    s.power_traces.resize(K);
    Eigen::MatrixXcd power = Q;
    for (int j = 0; j < K; ++j) {
        s.power_traces[j] = power.trace();
        if (j + 1 < K) power = power * Q;
    }
    if (retain_matrix) s.matrix = std::move(Q);
    return s;
}

std::vector<std::complex<double>> sym_traces(const std::vector<std::complex<double>>& p) {
    const std::size_t K = p.size();
    std::vector<cd> h(K + 1);
    h[0] = 1.0;
    for (std::size_t k = 1; k <= K; ++k) {
        cd acc = 0.0;
        for (std::size_t j = 1; j <= k; ++j) acc += p[j - 1] * h[k - j];
        h[k] = acc / static_cast<double>(k);
    }
    return h;
}

SymMomentResult mc_sym_abs_moment(int N, int k, std::uint64_t trials, std::uint64_t seed,
                                  int threads) {
    if (trials < 2) throw std::invalid_argument("mc_sym_abs_moment: trials must be >= 2");
    std::vector<double> abs_v(trials), sq_v(trials);
    parallel_for(static_cast<std::int64_t>(trials), threads, [&](std::int64_t t) {
        const auto s = sample_haar_unitary(N, keyed_u64(seed, 0x524d54ULL, t), k);
        const auto h = sym_traces(s.power_traces);
        const double a = std::abs(h[static_cast<std::size_t>(k)]);
        abs_v[static_cast<std::size_t>(t)] = a;
        sq_v[static_cast<std::size_t>(t)] = a * a;
    });

    SymMomentResult out;
    out.trials = trials;
    mean_and_stderr(abs_v, out.mean_abs, out.stderr_abs);
    mean_and_stderr(sq_v, out.mean_abs_sq, out.stderr_abs_sq);
    return out;
}

GeneratingCheck generating_check(const RmtSample& sample, std::complex<double> z, int K) {
    if (std::abs(z) > 0.9) throw std::domain_error("generating_check: needs |z| <= 0.9");
    if (K < 1 || static_cast<std::size_t>(K) > sample.power_traces.size())
        throw std::invalid_argument("generating_check: K outside the retained trace range");
    if (!sample.matrix)
        throw std::invalid_argument("generating_check: sample was not retained with its matrix");

    const int N = sample.N;
    const Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(N, N) - z * (*sample.matrix);
    GeneratingCheck out;
    out.lhs = 1.0 / M.partialPivLu().determinant();

    const auto h = sym_traces(sample.power_traces);
    cd rhs = 0.0;
    cd zk = 1.0;
    for (int k = 0; k <= K; ++k) {
        rhs += h[static_cast<std::size_t>(k)] * zk;
        zk *= z;
    }
    out.rhs = rhs;

    // tail: sum_{k>K} binom(k+N-1, N-1) |z|^k
    const double q = std::abs(z);
    double binom = 1.0;  // binom(K+N, N-1)
    for (int i = 1; i < N; ++i) binom *= static_cast<double>(K + 1 + i) / i;
    double term = binom * std::pow(q, K + 1);
    double tail = 0.0;
    for (int k = K + 1; term > tail * 1e-18 + 1e-300; ++k) {
        tail += term;
        term *= q * static_cast<double>(k + N) / static_cast<double>(k + 1);
    }
    out.bound = tail;

    if (std::abs(out.lhs - out.rhs) > out.bound)
        throw tolerance_error("generating_check: |1/det - partial sum| exceeds the analytic tail");
    return out;
}

TraceMoment mc_power_trace_moment(int N, int j, std::uint64_t trials, std::uint64_t seed,
                                  int threads) {
    if (trials < 2) throw std::invalid_argument("mc_power_trace_moment: trials must be >= 2");
    if (j < 1) throw std::invalid_argument("mc_power_trace_moment: j must be >= 1");
    std::vector<double> re_v(trials), im_v(trials), sq_v(trials);
    parallel_for(static_cast<std::int64_t>(trials), threads, [&](std::int64_t t) {
        const auto s = sample_haar_unitary(N, keyed_u64(seed, 0x505754ULL, t), j);
        const cd p = s.power_traces[static_cast<std::size_t>(j - 1)];
        re_v[static_cast<std::size_t>(t)] = p.real();
        im_v[static_cast<std::size_t>(t)] = p.imag();
        sq_v[static_cast<std::size_t>(t)] = std::norm(p);
    });
    TraceMoment out;
    double mre, mim;
    mean_and_stderr(re_v, mre, out.stderr_re);
    mean_and_stderr(im_v, mim, out.stderr_im);
    out.mean = cd(mre, mim);
    mean_and_stderr(sq_v, out.mean_abs_sq, out.stderr_abs_sq);
    return out;
}

}  // namespace lcl
