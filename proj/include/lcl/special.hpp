#ifndef LCL_SPECIAL_HPP
#define LCL_SPECIAL_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "lcl/characters.hpp"

namespace lcl {

// Complex gamma, Lanczos approximation (g = 7) with reflection for
// Re(z) < 1/2.  Relative accuracy ~1e-13 on |Re| <= 2, |Im| <= 100.
std::complex<double> gamma_complex(std::complex<double> z);

// Riemann zeta via the accelerated alternating (eta) series; valid for
// Re(s) > 0, s != 1.  Near the zeros of 1 - 2^{1-s} (s = 1 + 2*pi*i*k/log 2,
// k != 0) the eta route loses accuracy and the Hurwitz path is used instead.
std::complex<double> zeta(std::complex<double> s);

// Hurwitz zeta(s, q) for q in (0, 1], s != 1, by Euler-Maclaurin.
std::complex<double> hurwitz_zeta(std::complex<double> s, double q);

// zeta(s, q) along the vertical line s = sigma0 + i*(t0 + k*h), k = 0..count-1.
// Same values as hurwitz_zeta, but the truncated main sum is advanced by
// per-term phase rotations so the whole line costs O(N * count) multiplies
// instead of O(N * count) complex exponentials.
std::vector<std::complex<double>> hurwitz_zeta_line(double sigma0, double t0, double h,
                                                    std::size_t count, double q, int threads = 1);

// L(s, chi_j) for every j = 0..r-2 at once:
// L(s, chi_j) = r^{-s} sum_{a=1}^{r-1} chi_j(a) zeta(s, a/r), and the sum over
// a is a length-(r-1) DFT of the Hurwitz values arranged by discrete log.
// Entry j = 0 is L(s, chi_0) = (1 - r^{-s}) zeta(s).
std::vector<std::complex<double>> dirichlet_l_all(std::complex<double> s,
                                                  const CharacterTable& table);

std::complex<double> dirichlet_l(std::complex<double> s, const CharacterTable& table,
                                 std::uint64_t j);

// Sine integral Si(t) = int_0^t sin(u)/u du.  Taylor series for small t,
// Lentz continued fraction for E1(it) otherwise; absolute error ~1e-14.
double sine_integral(double t);

// Prime zeta P(s) = sum_p p^{-s} for Re(s) > 1, via
// P(s) = sum_{k>=1} mu(k)/k * log zeta(k s).
std::complex<double> prime_zeta(std::complex<double> s);

}  // namespace lcl

#endif
