#ifndef LCL_HARPER_HPP
#define LCL_HARPER_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "lcl/arith.hpp"
#include "lcl/characters.hpp"
#include "lcl/ratios.hpp"
#include "lcl/steinhaus.hpp"

namespace lcl {

// Partition of unity built from the indicator of [-1/2, 1/2] convolved with a
// Fejer kernel of order ceil(4/delta^2), normalized to unit mass.  The
// translates g_j(x) = g(x - j) tile the integers exactly; the overflow bump
// g_{N+1} is 1 minus the sum of the others by definition.
class PartitionOfUnity {
  public:
    PartitionOfUnity(int N, double delta);

    int N() const { return n_; }
    double delta() const { return delta_; }
    double kernel_order() const { return order_; }

    double g(double x) const;            // base bump
    double eval(int j, double x) const;  // g_j for |j| <= N, complement at j = N+1

  private:
    int n_;
    double delta_;
    double order_;
};

// Parameter block of the randomization pipeline, derived from x:
//   log P ~ (log x)^{1/6} (largest lattice value with (log P)^{0.01} integer
//   when one exists), Q = e^{(log x)^{1/3}}, X = e^{(log x)^{1/100}},
//   M = round(2 (log P)^{1.02}), Y = 2M+1, N = ceil(1.2 log log P),
//   delta = (log P)^{-1.3}, S = 100 Y floor((1/delta)^2 log(N log P)).
struct HarperParams {
    double log_x = 0.0;
    double x = 0.0;  // inf when log_x overflows a double exponent
    double log_P = 0.0;
    double P = 0.0, Q = 0.0, X = 0.0;
    int N = 0;
    double delta = 0.0;
    long long M = 0, Y = 0, S = 0;

    bool p_lattice_exact = false;   // log P = k^100 with integer k >= 2
    bool preconditions_met = false; // N >= 4 and delta <= 0.1

    bool cond_ratios_ok = false;    // max(P,1/delta,N)^{400 (Y/d)^2 log(N log P)} <= r^eps
    double cond_ratios_lhs_log = 0.0, cond_ratios_rhs_log = 0.0;
    bool cond_moment_ok = false;    // 20 Y log(N log P) <= (log x)^{1/2}
    double cond_moment_lhs = 0.0, cond_moment_rhs = 0.0;
    bool numerics_ok = false;       // N/delta, e^Y, S, log P all <= 1.1^S
};

HarperParams validate_harper_params(double log_x, std::uint64_t r, double epsilon);

struct OrthogonalityGap {
    std::complex<double> deterministic;
    std::complex<double> random_side;
    std::complex<double> gap;
    double normalized;  // |gap| r^{eta/2} / x at the nominal eta
};

// E_chi chi(m1) conj(chi(m2)) |sum c(n)chi(n)|^2 minus the unrestricted
// random second moment; vanishes identically when r > x max(m1, m2).
OrthogonalityGap orthogonality_gap(std::uint64_t m1, std::uint64_t m2, double x,
                                   const CharacterTable& table, WeightChoice c,
                                   const FactorSieve& sieve, const ConjectureParams& params = {});

struct EvenMomentResult {
    double lhs = 0.0;         // E_f |Q(f)|^{2k} |sum_{n<=x} c(n) f(n)|^2
    double lhs_stderr = 0.0;  // zero on the exact path
    bool lhs_exact = false;
    double rhs = 0.0;         // sum d~(n)|c(n)|^2 * k! (2 sum v_q |a_q|^2 / q)^k
    double ratio = 0.0;
};

// q_set is P cup {p^2 : p in P}; a must align with the sorted q_set and have
// |a(q)| <= 1.  Exact moment expansion when |P| <= 3 and k <= 2, Monte Carlo
// otherwise.  The bound carries an unstated absolute constant, so ratio is
// reported, never asserted <= 1.
EvenMomentResult even_moment_quantities(const std::vector<std::uint32_t>& p_set,
                                        const std::vector<std::complex<double>>& a,
                                        int k, double x, WeightChoice c, const FactorSieve& sieve,
                                        std::uint64_t mc_trials = 0, std::uint64_t seed = 0,
                                        int threads = 1);

// d~(n): number of divisors of n supported on the primes of p_set.
std::uint64_t dtilde(std::uint64_t n, const std::vector<std::uint32_t>& p_set);

// S_k(f, c) = Re sum_{p<=P} [ f(p)c(p) p^{-1/2 - i kappa} + f(p)^2 c(p)^2 / (2 p^{1 + 2 i kappa}) ]
// with kappa = k / (log P)^{1.01}.  Equals S_k(fc, 1) identically.
double s_statistic(int k, double P, const Weights& w, WeightChoice c, const FactorSieve& sieve);

struct SigmaSide {
    enum class Kind { character, random } kind = Kind::character;
    const CharacterTable* table = nullptr;  // character side
    std::uint64_t trials = 0;               // random side
    std::uint64_t seed = 0;
    int threads = 1;
};

struct SigmaResult {
    double sigma = 0.0;
    double conditioned_second_moment = 0.0;  // defined as 0 when sigma = 0
};

// j_vector has length 2M+1 (index i = -M..M), entries in [-N, N+1].
// sigma = E prod_i g_{j(i)}(S_i(., c));  the conditioned moment divides
// E[prod g * |sum|^2] by sigma.  The random side uses S_i(f, 1) and restricts
// the inner sum to gpf(n) > Q.
SigmaResult sigma_and_conditioned_moment(const std::vector<int>& j_vector, const SigmaSide& side,
                                         double x, WeightChoice c, double P, double Q,
                                         const FactorSieve& sieve, const PartitionOfUnity& part);

struct SieveSums {
    double sum1 = 0.0;  // sum_{Q<m<=x, p|m => p>P} (X/m) int_m^{(1+1/X)m} (x/m - x/t + 1) dt
    double sum2 = 0.0;  // sum_{t/(1+1/X)<m<=t, p|m => p>P} X/m   (computed when t given)
    double sum1_normalized = 0.0;  // sum1 log P / x
    double sum2_normalized = 0.0;  // sum2 log P
};

SieveSums applied_sieve_sums(double x, double P, double Q, double X, const FactorSieve& sieve,
                             std::optional<double> t = {});

// F_P(s) = prod_{p<=P} (1 - f(p)/p^s)^{-1} for unit or sampled weights.
std::complex<double> euler_product_F(const Weights& w, double P, std::complex<double> s,
                                     const FactorSieve& sieve);

struct CriticalIntegral {
    double value = 0.0;       // int_{-tmax}^{tmax} |F(1/2+it)|^2 / |1/2+it|^2 dt, Simpson
    double tail_bound = 0.0;  // prod (1-p^{-1/2})^{-2} * 2/tmax
};

CriticalIntegral critical_integral(const Weights& w, double P, double t_max, double quad_step,
                                   const FactorSieve& sieve);

struct PerronResult {
    std::complex<double> direct;
    std::complex<double> contour;
    double error = 0.0;         // |direct - contour|
    double perron_scale = 0.0;  // y^{1+eps} / T0
    double quad_refinement = 0.0;  // relative change from step 2h to h
};

// Direct partial sum versus the truncated vertical-line integral of
// (1/L^c(s)) y^s / s on Re(s) = 1 + epsilon, with y = floor(x) + 0.5 and
// L^c = L* for c = mu, L-flat for c = lambda.  Character and unit weights go
// through the Euler-Maclaurin evaluators; sample weights through a truncated
// coefficient series.
PerronResult perron_check(double x, const Weights& w, WeightChoice c, std::uint64_t r, double T0,
                          double epsilon, double quad_step, const FactorSieve& sieve,
                          int threads = 1, std::uint64_t sample_series_terms = 20000);

}  // namespace lcl

#endif
