#include "lcl/dft.hpp"

#include <cmath>
#include <cstdint>

namespace lcl {

namespace {

using cd = std::complex<double>;

struct Plan {
    std::size_t n;
    std::vector<cd> root;  // root[k] = exp(2*pi*i*k/n)
    std::vector<cd> work;

    explicit Plan(std::size_t n_) : n(n_), root(n_), work(n_) {
        const double w = 2.0 * 3.14159265358979323846264338327950288 / static_cast<double>(n);
        for (std::size_t k = 0; k < n; ++k)
            root[k] = cd(std::cos(w * static_cast<double>(k)), std::sin(w * static_cast<double>(k)));
    }

    // DFT of x[off], x[off+stride], ..., length m, written densely into out.
    // stride*m divides n exactly, so exp(2*pi*i/m) = root[n/m].
    void run(const std::vector<cd>& x, std::size_t off, std::size_t stride, std::size_t m, cd* out) {
        if (m == 1) {
            out[0] = x[off];
            return;
        }
        std::size_t p = smallest_factor(m);
        if (p == m) {
            // prime length: naive
            const std::size_t step = n / m;
            for (std::size_t k = 0; k < m; ++k) {
                cd acc = 0.0;
                std::size_t idx = 0;
                for (std::size_t j = 0; j < m; ++j) {
                    acc += x[off + j * stride] * root[idx];
                    idx += k * step;
                    if (idx >= n) idx -= n;  // k*step < n, single wrap
                }
                out[k] = acc;
            }
            return;
        }
        const std::size_t m2 = m / p;
        // p interleaved sub-DFTs of length m2
        for (std::size_t i = 0; i < p; ++i)
            run(x, off + i * stride, stride * p, m2, out + i * m2);
        // twiddle + p-point transforms across the subresults
        std::vector<cd>& tmp = work;
        const std::size_t step = n / m;        // exp(2*pi*i/m) index step
        const std::size_t pstep = n / p;       // exp(2*pi*i/p) index step
        for (std::size_t t = 0; t < m2; ++t) {
            for (std::size_t i = 0; i < p; ++i)
                tmp[i] = out[i * m2 + t] * root[(i * t * step) % n];
            for (std::size_t q = 0; q < p; ++q) {
                cd acc = 0.0;
                for (std::size_t i = 0; i < p; ++i)
                    acc += tmp[i] * root[(i * q * pstep) % n];
                out[q * m2 + t] = acc;
            }
        }
        // outputs are currently indexed k = q*m2 + t; that is already the
        // natural order for X[q*m2 + t], nothing to permute
    }

    static std::size_t smallest_factor(std::size_t m) {
        if (m % 2 == 0) return 2;
        for (std::size_t d = 3; d * d <= m; d += 2)
            if (m % d == 0) return d;
        return m;
    }
};

}  // namespace

std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& x) {
    const std::size_t n = x.size();
    std::vector<cd> out(n);
    if (n == 0) return out;
    Plan plan(n);
    std::vector<cd> buf(n);
    plan.run(x, 0, 1, n, buf.data());
    return buf;
}

std::vector<std::complex<double>> dft_naive(const std::vector<std::complex<double>>& x) {
    const std::size_t n = x.size();
    std::vector<cd> out(n);
    if (n == 0) return out;
    const double w = 2.0 * 3.14159265358979323846264338327950288 / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        cd acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double ang = w * static_cast<double>((j * k) % n);
            acc += x[j] * cd(std::cos(ang), std::sin(ang));
        }
        out[k] = acc;
    }
    return out;
}

}  // namespace lcl
