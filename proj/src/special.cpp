#include "lcl/special.hpp"

#include <cmath>
#include <stdexcept>

#include "lcl/dft.hpp"
#include "lcl/parallel.hpp"

namespace lcl {

namespace {

using cd = std::complex<double>;
constexpr double kPi = 3.14159265358979323846264338327950288;

double bern_over_fact(int j) {
    // B_{2j} divided by (2j)!, exact rational numerators/denominators
    static const double b2j[] = {0.0,
                                 1.0 / 6.0,
                                 -1.0 / 30.0,
                                 1.0 / 42.0,
                                 -1.0 / 30.0,
                                 5.0 / 66.0,
                                 -691.0 / 2730.0,
                                 7.0 / 6.0,
                                 -3617.0 / 510.0,
                                 43867.0 / 798.0,
                                 -174611.0 / 330.0,
                                 854513.0 / 138.0,
                                 -236364091.0 / 2730.0,
                                 8553103.0 / 6.0,
                                 -23749461029.0 / 870.0,
                                 8615841276005.0 / 14322.0};
    static double cache[16] = {0.0};
    static bool init = false;
    if (!init) {
        double fact = 1.0;  // (2j)!
        for (int k = 1; k <= 15; ++k) {
            fact *= (2.0 * k - 1.0) * (2.0 * k);
            cache[k] = b2j[k] / fact;
        }
        init = true;
    }
    return cache[j];
}

constexpr int kEmTerms = 12;

int em_main_terms(double abs_t) {
    return std::max(18, static_cast<int>(std::ceil(0.3 * abs_t)) + 12);
}

// correction terms of Euler-Maclaurin beyond the truncated main sum:
// w^{1-s}/(s-1) + w^{-s}/2 + sum_j B_{2j}/(2j)! (s)_{2j-1} w^{-s-2j+1},  w = N + q
cd em_tail(cd s, cd w_pow_minus_s, double w) {
    const cd one_minus_s_term = w_pow_minus_s * w / (s - 1.0);
    cd acc = one_minus_s_term + 0.5 * w_pow_minus_s;
    cd rising = s;             // (s)_{2j-1} built incrementally
    cd wp = w_pow_minus_s / w;  // w^{-s-1}
    for (int j = 1; j <= kEmTerms; ++j) {
        acc += bern_over_fact(j) * rising * wp;
        rising *= (s + cd(2.0 * j - 1.0)) * (s + cd(2.0 * j));
        wp /= w * w;
    }
    return acc;
}

bool eta_route_safe(cd s) {
    const cd denom = 1.0 - std::exp((1.0 - s) * std::log(2.0));
    return std::abs(denom) > 0.1 && std::abs(s.imag()) < 120.0 && s.real() > 0.05;
}

cd zeta_eta(cd s) {
    // P. Borwein's accelerated alternating series with fixed n
    constexpr int n = 134;
    static double d[n + 1];
    static bool init = false;
    if (!init) {
        double term = 1.0 / n;  // t_0 = (n-1)!/n!
        double sum = term;
        d[0] = n * sum;
        for (int i = 0; i < n; ++i) {
            term *= 4.0 * (n + i) * (n - i) / ((2.0 * i + 1.0) * (2.0 * i + 2.0));
            sum += term;
            d[i + 1] = n * sum;
        }
        init = true;
    }
    cd acc = 0.0;
    for (int k = 0; k < n; ++k) {
        const double coef = ((k & 1) ? -1.0 : 1.0) * (d[k] - d[n]);
        acc += coef * std::exp(-s * std::log(static_cast<double>(k + 1)));
    }
    const cd denom = 1.0 - std::exp((1.0 - s) * std::log(2.0));
    return -acc / (d[n] * denom);
}

}  // namespace

std::complex<double> gamma_complex(std::complex<double> z) {
    // coefficients for g = 7
    static const double p[9] = {0.99999999999980993,     676.5203681218851,    -1259.1392167224028,
                                771.32342877765313,      -176.61502916214059,  12.507343278686905,
                                -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * gamma_complex(1.0 - z));
    z -= 1.0;
    cd x = p[0];
    for (int i = 1; i < 9; ++i) x += p[i] / (z + cd(static_cast<double>(i)));
    const cd t = z + 7.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

std::complex<double> zeta(std::complex<double> s) {
    if (std::abs(s - cd(1.0)) < 1e-12) throw std::domain_error("zeta: pole at s = 1");
    if (eta_route_safe(s)) return zeta_eta(s);
    return hurwitz_zeta(s, 1.0);
}

std::complex<double> hurwitz_zeta(std::complex<double> s, double q) {
    if (q <= 0.0 || q > 1.0) throw std::invalid_argument("hurwitz_zeta: q must lie in (0,1]");
    if (std::abs(s - cd(1.0)) < 1e-12) throw std::domain_error("hurwitz_zeta: pole at s = 1");
    const int N = em_main_terms(std::abs(s.imag()));
    cd main = 0.0;
    for (int k = 0; k < N; ++k) main += std::exp(-s * std::log(static_cast<double>(k) + q));
    const double w = static_cast<double>(N) + q;
    const cd wps = std::exp(-s * std::log(w));
    return main + em_tail(s, wps, w);
}

std::vector<std::complex<double>> hurwitz_zeta_line(double sigma0, double t0, double h,
                                                    std::size_t count, double q, int threads) {
    if (q <= 0.0 || q > 1.0) throw std::invalid_argument("hurwitz_zeta_line: q must lie in (0,1]");
    std::vector<cd> out(count);
    if (count == 0) return out;

    constexpr std::size_t kChunk = 4096;
    const std::size_t n_chunks = (count + kChunk - 1) / kChunk;
    parallel_for(static_cast<std::int64_t>(n_chunks), threads, [&](std::int64_t chunk) {
        const std::size_t lo = static_cast<std::size_t>(chunk) * kChunk;
        const std::size_t hi = std::min(count, lo + kChunk);
        const double t_lo = t0 + h * static_cast<double>(lo);
        const double t_hi = t0 + h * static_cast<double>(hi - 1);
        const double abs_t = std::max(std::abs(t_lo), std::abs(t_hi));
        const int N = em_main_terms(abs_t);

        // term k of the main sum at node t: (k+q)^{-sigma0} e^{-i t log(k+q)}
        std::vector<cd> cur(N), rot(N);
        for (int k = 0; k < N; ++k) {
            const double lg = std::log(static_cast<double>(k) + q);
            cur[k] = std::exp(-sigma0 * lg) * cd(std::cos(-t_lo * lg), std::sin(-t_lo * lg));
            rot[k] = cd(std::cos(-h * lg), std::sin(-h * lg));
        }
        const double w = static_cast<double>(N) + q;
        const double lw = std::log(w);
        for (std::size_t idx = lo; idx < hi; ++idx) {
            cd main = 0.0;
            for (int k = 0; k < N; ++k) {
                main += cur[k];
                cur[k] *= rot[k];
            }
            const double t = t0 + h * static_cast<double>(idx);
            const cd s(sigma0, t);
            const cd wps = std::exp(-sigma0 * lw) * cd(std::cos(-t * lw), std::sin(-t * lw));
            out[idx] = main + em_tail(s, wps, w);
        }
    });
    return out;
}

std::vector<std::complex<double>> dirichlet_l_all(std::complex<double> s,
                                                  const CharacterTable& table) {
    const std::uint64_t r = table.r;
    // arrange zeta(s, a/r) by discrete log of a
    std::vector<cd> by_log(table.order);
    for (std::uint64_t a = 1; a < r; ++a)
        by_log[table.ind[a]] = hurwitz_zeta(s, static_cast<double>(a) / static_cast<double>(r));
    auto transformed = dft(by_log);
    const cd scale = std::exp(-s * std::log(static_cast<double>(r)));
    for (auto& v : transformed) v *= scale;
    return transformed;
}

std::complex<double> dirichlet_l(std::complex<double> s, const CharacterTable& table,
                                 std::uint64_t j) {
    const std::uint64_t r = table.r;
    cd acc = 0.0;
    for (std::uint64_t a = 1; a < r; ++a)
        acc += table.chi(j, a) * hurwitz_zeta(s, static_cast<double>(a) / static_cast<double>(r));
    return acc * std::exp(-s * std::log(static_cast<double>(r)));
}

std::complex<double> prime_zeta(std::complex<double> s) {
    if (s.real() <= 1.0) throw std::domain_error("prime_zeta: needs Re(s) > 1");
    static const int mu_small[] = {0, 1,  -1, -1, 0, -1, 1, -1, 0, 0,  1,  -1, 0,  -1, 1,
                                   1, 0,  -1, 0,  -1, 0, 1, 1,  -1, 0,  0,  1,  0,  0,  -1,
                                   -1, -1, 0,  1,  1, 1, 0, -1, 1, 1,  0,  -1, -1, -1, 0,
                                   0, 1,  -1, 0,  0, 0, 1, 0,  -1, 0,  1,  0,  1,  1,  -1, 0};
    cd acc = 0.0;
    for (int k = 1; k < 60; ++k) {
        if (mu_small[k] == 0) continue;
        const cd term = std::log(zeta(static_cast<double>(k) * s)) *
                        (static_cast<double>(mu_small[k]) / static_cast<double>(k));
        acc += term;
        if (std::abs(term) < 1e-18) break;
    }
    return acc;
}

double sine_integral(double t) {
    const double at = std::abs(t);
    double si;
    if (at <= 2.5) {
        // Taylor: sum (-1)^k t^{2k+1} / ((2k+1)(2k+1)!)
        double term = at, sum = at;
        for (int k = 1; k <= 24; ++k) {
            term *= -at * at / ((2.0 * k) * (2.0 * k + 1.0));
            sum += term / (2.0 * k + 1.0);
            if (std::abs(term) < 1e-18) break;
        }
        si = sum;
    } else {
        // Lentz continued fraction for E1(i t); Ci + i si from its value
        const cd one(1.0, 0.0);
        cd b(1.0, at);
        cd c(1.0 / 1e-290, 0.0);
        cd d = one / b;
        cd hcf = d;
        for (int i = 2; i <= 400; ++i) {
            const double a = -(i - 1.0) * (i - 1.0);
            b += 2.0;
            d = one / (a * d + b);
            c = b + a / c;
            const cd del = c * d;
            hcf *= del;
            if (std::abs(del - one) < 1e-16) break;
        }
        hcf *= cd(std::cos(at), -std::sin(at));
        si = kPi / 2.0 + hcf.imag();
    }
    return t < 0.0 ? -si : si;
}

}  // namespace lcl
