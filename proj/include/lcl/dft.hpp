#ifndef LCL_DFT_HPP
#define LCL_DFT_HPP

#include <complex>
#include <vector>

namespace lcl {

// X[k] = sum_j x[j] * exp(+2*pi*i*j*k/n), any length n.
// Mixed-radix Cooley-Tukey over the prime factorization of n; a prime factor
// p costs O(n*p), so smooth lengths run in O(n log n) and a prime length
// degrades to the naive O(n^2) transform.
std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& x);

// Naive O(n^2) evaluation of the same sum (reference path).
std::vector<std::complex<double>> dft_naive(const std::vector<std::complex<double>>& x);

}  // namespace lcl

#endif
