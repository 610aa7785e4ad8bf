#ifndef LCL_RMT_HPP
#define LCL_RMT_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace lcl {

// One Haar-unitary draw: power traces p_j = tr(A^j) for j = 1..K, and
// optionally the matrix itself (needed by the generating-function check).
struct RmtSample {
    int N = 0;
    std::uint64_t seed = 0;
    std::vector<std::complex<double>> power_traces;  // p_1..p_K
    std::optional<Eigen::MatrixXcd> matrix;
};

// Ginibre matrix of i.i.d. standard complex Gaussians, QR-orthonormalized
// with the R-diagonal phases absorbed so the law is exactly Haar.
RmtSample sample_haar_unitary(int N, std::uint64_t seed, int K, bool retain_matrix = false);

// tr Sym^k A for k = 0..K from the power traces, by the Newton recurrence
// h_k = (1/k) sum_{j=1}^{k} p_j h_{k-j}, h_0 = 1.
std::vector<std::complex<double>> sym_traces(const std::vector<std::complex<double>>& power_traces);

struct SymMomentResult {
    double mean_abs = 0.0;
    double stderr_abs = 0.0;
    double mean_abs_sq = 0.0;
    double stderr_abs_sq = 0.0;
    std::uint64_t trials = 0;
};

// Monte Carlo E|tr Sym^k| and E|tr Sym^k|^2 over fresh Haar samples.
// E|tr Sym^k|^2 = 1 exactly (irreducibility), so mean_abs_sq calibrates the
// sampler; mean_abs is the conjectural o(1) statistic.
SymMomentResult mc_sym_abs_moment(int N, int k, std::uint64_t trials, std::uint64_t seed,
                                  int threads = 1);

struct GeneratingCheck {
    std::complex<double> lhs;  // 1 / det(I - zA)
    std::complex<double> rhs;  // sum_{k<=K} h_k z^k
    double bound;              // sum_{k>K} binom(k+N-1, N-1) |z|^k
};

// Verifies 1/det(I - zA) = sum_k h_k z^k within the analytic tail bound
// |h_k| <= dim Sym^k = binom(k+N-1, N-1); throws tolerance_error on failure.
GeneratingCheck generating_check(const RmtSample& sample, std::complex<double> z, int K);

struct TraceMoment {
    std::complex<double> mean;
    double stderr_re = 0.0, stderr_im = 0.0;
    double mean_abs_sq = 0.0;
    double stderr_abs_sq = 0.0;
};

// Monte Carlo moments of a single power trace p_j (sampler calibration:
// E p_j = 0 and E|p_j|^2 = min(j, N) under Haar).
TraceMoment mc_power_trace_moment(int N, int j, std::uint64_t trials, std::uint64_t seed,
                                  int threads = 1);

}  // namespace lcl

#endif
