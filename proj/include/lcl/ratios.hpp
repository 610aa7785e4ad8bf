#ifndef LCL_RATIOS_HPP
#define LCL_RATIOS_HPP

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "lcl/arith.hpp"
#include "lcl/characters.hpp"

namespace lcl {

// Shift tuple for the ratio average E L(z1,chi) L(z2,conj chi) / (L(s1,chi) L(s2,conj chi)).
// For conjecture-mode evaluation Re(z1) = Re(z2) = 1/2 and Re(s1) = Re(s2) = 1/2 + eps.
struct RatiosPoint {
    std::complex<double> z1, z2, s1, s2;
    std::uint64_t r = 0;

    double T() const;  // max of the four |imaginary parts|
    bool on_conjecture_line(double eps_min = 1e-9) const;
};

// Nominal reporting knobs for the conjectural power savings r^{-omega},
// r^{-omega'}, r^{-eta}.  The true constants are unknown; these only annotate
// predicted error magnitudes in reports.
struct ConjectureParams {
    double omega = 0.25;
    double omega_prime = 0.25;
    double eta = 0.25;
    bool nominal = true;
};

struct TruncationControl {
    std::uint64_t series_cutoff = 200000;   // k-range of the shifted-convolution series
    std::uint64_t euler_cutoff = 100000;    // largest prime in Euler products
    std::uint64_t l_series_terms = 1000000; // terms of truncated Dirichlet series
    enum class TailMode { geometric, polya_vinogradov } tail_bound_mode = TailMode::polya_vinogradov;
};

// Completely multiplicative weight: unit, a Dirichlet character, or a
// materialized Steinhaus sample.  The L-star machinery applies the
// coprime-to-r filter itself.
class Weights {
  public:
    static Weights unit();
    static Weights character(const CharacterTable* table, std::uint64_t j);
    static Weights sample(std::shared_ptr<const std::vector<std::complex<double>>> values);

    std::complex<double> operator()(std::uint64_t n) const;
    Weights squared() const;

    bool is_unit() const { return kind_ == Kind::unit; }
    bool is_principal() const { return kind_ == Kind::character && j_ == 0; }
    bool is_character() const { return kind_ == Kind::character; }
    const CharacterTable* table() const { return table_; }
    std::uint64_t character_index() const { return j_; }
    std::uint64_t max_n() const;  // largest n with a defined value (sample weights)

  private:
    enum class Kind { unit, character, sample };
    Kind kind_ = Kind::unit;
    const CharacterTable* table_ = nullptr;
    std::uint64_t j_ = 0;
    std::shared_ptr<const std::vector<std::complex<double>>> values_;
};

struct LstarResult {
    std::complex<double> value;
    double tail_bound = 0.0;  // absolute bound on the truncation error
    bool tail_rigorous = false;
};

// L*(s, f) = sum_{n >= 1, gcd(n,r)=1} f(n) n^{-s}, truncated.
// Non-principal characters: direct series for Re(s) > 0 with a partial-
// summation tail bound (trivial |S| <= r or Polya-Vinogradov, per
// tail_bound_mode).  Unit/principal/sample weights: series for Re(s) > 1
// with the integral tail bound, Euler product for 1/2 < Re(s) <= 1 with a
// heuristic (non-rigorous) tail estimate.
LstarResult lstar_truncated(std::complex<double> s, const Weights& w, std::uint64_t r,
                            const TruncationControl& ctl);

// L-flat(s, psi) = L*(s, psi) / L*(2s, psi^2).
std::complex<double> lflat(std::complex<double> s, const Weights& w, std::uint64_t r,
                           const TruncationControl& ctl);

// Truncated sum_{n} lambda(n) psi(n) 1_{gcd(n,r)=1} n^{-s}, the reciprocal of
// L-flat; exposed so the identity can be checked against 1/lflat.
std::complex<double> lflat_reciprocal_series(std::complex<double> s, const Weights& w,
                                             std::uint64_t r, const TruncationControl& ctl,
                                             const FactorSieve& sieve);

// Gamma-and-sine factor multiplying the dual term of the ratio main term;
// holomorphic for Re(z1), Re(z2) < 1, and equal to 1 at (1/2, 1/2).
std::complex<double> h_factor(std::complex<double> z1, std::complex<double> z2);

// Polar part: L(1+a+b,chi0) L(1+g+d,chi0) / (L(1+a+d,chi0) L(1+b+g,chi0)),
// with L(s,chi0) = (1 - r^{-s}) zeta(s).
std::complex<double> y_star(std::complex<double> a, std::complex<double> b,
                            std::complex<double> g, std::complex<double> d, std::uint64_t r);

enum class GStarPath { series, euler };

// The arithmetic factor
//   G*(a;b;g;d) = sum_{m1 n1 = m2 n2} mu(n1) mu(n2) 1_{r∤m1m2n1n2}
//                 m1^{-1/2-a} m2^{-1/2-b} n1^{-1/2-g} n2^{-1/2-d}.
// series: direct truncated sum over the common product k = m1 n1 = m2 n2
// (requires all Re shifts > 0); euler: absolutely convergent Euler product
// times y_star (requires |Re| < 1/4 and the y_star arguments off the pole).
std::complex<double> g_star(std::complex<double> a, std::complex<double> b,
                            std::complex<double> g, std::complex<double> d, std::uint64_t r,
                            const TruncationControl& ctl, GStarPath path,
                            const FactorSieve& sieve, double* series_tail_estimate = nullptr);

// Main term of the ratio average:
//   MT = G*(z1-1/2, z2-1/2, s1-1/2, s2-1/2)
//      + H(z1,z2) r^{1-z1-z2} G*(1/2-z2, 1/2-z1, s1-1/2, s2-1/2),
// evaluated on the euler path.
std::complex<double> mt_evaluate(const RatiosPoint& point, const TruncationControl& ctl,
                                 const FactorSieve& sieve);

// Character-side average over the r-2 non-principal characters, using the
// Euler-Maclaurin L evaluator.
std::complex<double> empirical_ratio_avg(const RatiosPoint& point, const CharacterTable& table);

// Twisted variant: E_{chi != chi0} chi(m1) conj(chi(m2)) / (L(s1,chi) L(s2,conj chi)).
std::complex<double> twisted_ratio_avg(std::complex<double> s1, std::complex<double> s2,
                                       std::uint64_t m1, std::uint64_t m2,
                                       const CharacterTable& table);

// Random side of the twisted variant, exactly-to-truncation:
// sum over m1 n1 = m2 n2 with n1, n2 squarefree of
// mu(n1) mu(n2) 1_{r∤m1m2n1n2} n1^{-s1} n2^{-s2}.
std::complex<double> twisted_ratio_random_side(std::complex<double> s1, std::complex<double> s2,
                                               std::uint64_t m1, std::uint64_t m2, std::uint64_t r,
                                               const TruncationControl& ctl,
                                               const FactorSieve& sieve);

// Same quantity in closed form via zeta (the series above is multiplicative).
std::complex<double> twisted_ratio_random_closed_form(std::complex<double> s1,
                                                      std::complex<double> s2, std::uint64_t m1,
                                                      std::uint64_t m2, std::uint64_t r);

}  // namespace lcl

#endif
