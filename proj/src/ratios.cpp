#include "lcl/ratios.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "lcl/special.hpp"

namespace lcl {

namespace {

using cd = std::complex<double>;
constexpr double kPi = 3.14159265358979323846264338327950288;

cd cpow_n(std::uint64_t n, cd exponent) {  // n^{exponent}
    return std::exp(exponent * std::log(static_cast<double>(n)));
}

bool near_pole_of_zeta(cd arg_offset) { return std::abs(arg_offset) < 1e-6; }

}  // namespace

double RatiosPoint::T() const {
    return std::max(std::max(std::abs(z1.imag()), std::abs(z2.imag())),
                    std::max(std::abs(s1.imag()), std::abs(s2.imag())));
}

bool RatiosPoint::on_conjecture_line(double eps_min) const {
    const double eps1 = s1.real() - 0.5, eps2 = s2.real() - 0.5;
    return std::abs(z1.real() - 0.5) < 1e-12 && std::abs(z2.real() - 0.5) < 1e-12 &&
           eps1 > eps_min && std::abs(eps1 - eps2) < 1e-12;
}

Weights Weights::unit() { return Weights{}; }

Weights Weights::character(const CharacterTable* table, std::uint64_t j) {
    Weights w;
    w.kind_ = Kind::character;
    w.table_ = table;
    w.j_ = j % table->order;
    return w;
}

Weights Weights::sample(std::shared_ptr<const std::vector<cd>> values) {
    Weights w;
    w.kind_ = Kind::sample;
    w.values_ = std::move(values);
    return w;
}

std::complex<double> Weights::operator()(std::uint64_t n) const {
    switch (kind_) {
        case Kind::unit: return 1.0;
        case Kind::character: return table_->chi(j_, n);
        case Kind::sample:
            if (n >= values_->size())
                throw std::out_of_range("Weights: sample value requested beyond materialized range");
            return (*values_)[n];
    }
    return 0.0;
}

Weights Weights::squared() const {
    switch (kind_) {
        case Kind::unit: return *this;
        case Kind::character: return character(table_, (2 * j_) % table_->order);
        case Kind::sample: {
            auto sq = std::make_shared<std::vector<cd>>(*values_);
            for (auto& v : *sq) v *= v;
            Weights w;
            w.kind_ = Kind::sample;
            w.values_ = std::move(sq);
            return w;
        }
    }
    return *this;
}

std::uint64_t Weights::max_n() const {
    if (kind_ == Kind::sample) return values_->empty() ? 0 : values_->size() - 1;
    return UINT64_MAX;
}

LstarResult lstar_truncated(std::complex<double> s, const Weights& w, std::uint64_t r,
                            const TruncationControl& ctl) {
    const double sigma = s.real();
    const bool principal_like = w.is_unit() || w.is_principal();
    if (principal_like && std::abs(s - cd(1.0)) < 1e-2)
        throw std::domain_error("lstar_truncated: L(s,chi0) = (1-r^{-s}) zeta(s) has a pole at s=1");

    LstarResult res;

    if (w.is_character() && !w.is_principal()) {
        if (sigma <= 0.0)
            throw std::domain_error("lstar_truncated: character series needs Re(s) > 0");
        const std::uint64_t N = ctl.l_series_terms;
        cd acc = 0.0;
        for (std::uint64_t n = 1; n <= N; ++n) {
            if (n % r == 0) continue;
            acc += w(n) * cpow_n(n, -s);
        }
        const double rr = static_cast<double>(r);
        const double B = (ctl.tail_bound_mode == TruncationControl::TailMode::polya_vinogradov)
                             ? std::sqrt(rr) * std::log(rr)
                             : rr;
        res.value = acc;
        res.tail_bound = std::abs(s) * B * std::pow(static_cast<double>(N), -sigma) / sigma;
        res.tail_rigorous = true;
        return res;
    }

    if (sigma > 1.0) {
        const std::uint64_t N = std::min<std::uint64_t>(ctl.l_series_terms, w.max_n());
        cd acc = 0.0;
        for (std::uint64_t n = 1; n <= N; ++n) {
            if (n % r == 0) continue;
            acc += w(n) * cpow_n(n, -s);
        }
        res.value = acc;
        res.tail_bound = std::pow(static_cast<double>(N), 1.0 - sigma) / (sigma - 1.0);
        res.tail_rigorous = true;
        return res;
    }

    if (sigma > 0.5) {
        // Euler product over p <= euler_cutoff; tail estimate heuristic only
        const auto primes = primes_up_to(ctl.euler_cutoff);
        cd acc = 1.0;
        for (auto p : primes) {
            if (p == r) continue;
            acc *= 1.0 / (1.0 - w(p) * cpow_n(p, -s));
        }
        const double P = static_cast<double>(ctl.euler_cutoff);
        const double log_tail =
            std::sqrt(std::pow(P, 1.0 - 2.0 * sigma) / ((2.0 * sigma - 1.0) * std::log(P)));
        res.value = acc;
        res.tail_bound = std::abs(acc) * log_tail;
        res.tail_rigorous = false;
        return res;
    }

    throw std::domain_error("lstar_truncated: Re(s) <= 1/2 not supported for these weights");
}

std::complex<double> lflat(std::complex<double> s, const Weights& w, std::uint64_t r,
                           const TruncationControl& ctl) {
    const cd num = lstar_truncated(s, w, r, ctl).value;
    const cd den = lstar_truncated(2.0 * s, w.squared(), r, ctl).value;
    if (std::abs(den) < 1e-12)
        throw std::domain_error("lflat: L*(2s, psi^2) vanishes to working precision");
    return num / den;
}

std::complex<double> lflat_reciprocal_series(std::complex<double> s, const Weights& w,
                                             std::uint64_t r, const TruncationControl& ctl,
                                             const FactorSieve& sieve) {
    const std::uint64_t N = std::min({ctl.l_series_terms, sieve.limit, w.max_n()});
    cd acc = 0.0;
    for (std::uint64_t n = 1; n <= N; ++n) {
        if (n % r == 0) continue;
        acc += static_cast<double>(sieve.lambda[n]) * w(n) * cpow_n(n, -s);
    }
    return acc;
}

std::complex<double> h_factor(std::complex<double> z1, std::complex<double> z2) {
    if (z1.real() >= 1.0 || z2.real() >= 1.0)
        throw std::domain_error("h_factor: requires Re(z1), Re(z2) < 1");
    cd sines = 0.0;
    for (int a = 0; a <= 1; ++a) {
        const cd arg1 = 0.5 * kPi * (1.0 - z1 + static_cast<double>(a));
        const cd arg2 = 0.5 * kPi * (1.0 - z2 + static_cast<double>(a));
        sines += std::sin(arg1) * std::sin(arg2);
    }
    sines *= 0.5;
    return std::pow(cd(2.0 * kPi), z1 + z2) / (kPi * kPi) * gamma_complex(1.0 - z1) *
           gamma_complex(1.0 - z2) * sines;
}

namespace {

cd l_chi0(cd s, std::uint64_t r) {
    return (1.0 - std::exp(-s * std::log(static_cast<double>(r)))) * zeta(s);
}

}  // namespace

std::complex<double> y_star(std::complex<double> a, std::complex<double> b,
                            std::complex<double> g, std::complex<double> d, std::uint64_t r) {
    for (cd off : {a + b, g + d, a + d, b + g})
        if (near_pole_of_zeta(off))
            throw std::domain_error("y_star: argument within 1e-6 of the zeta pole at 1");
    return l_chi0(1.0 + a + b, r) * l_chi0(1.0 + g + d, r) /
           (l_chi0(1.0 + a + d, r) * l_chi0(1.0 + b + g, r));
}

std::complex<double> g_star(std::complex<double> a, std::complex<double> b,
                            std::complex<double> g, std::complex<double> d, std::uint64_t r,
                            const TruncationControl& ctl, GStarPath path,
                            const FactorSieve& sieve, double* series_tail_estimate) {
    if (path == GStarPath::series) {
        if (a.real() <= 0 || b.real() <= 0 || g.real() <= 0 || d.real() <= 0)
            throw std::domain_error("g_star: series path needs positive real parts");
        const std::uint64_t K = std::min(ctl.series_cutoff, sieve.limit);
        // F[k] = sum_{m n = k, n squarefree} mu(n) m^{-1/2-a} n^{-1/2-g}; G likewise with (b,d)
        std::vector<cd> mpow_a(K + 1), mpow_b(K + 1), npow_g(K + 1), npow_d(K + 1);
        for (std::uint64_t n = 1; n <= K; ++n) {
            mpow_a[n] = cpow_n(n, -(0.5 + a));
            mpow_b[n] = cpow_n(n, -(0.5 + b));
            const double mu = sieve.mu[n];
            npow_g[n] = (mu == 0.0) ? cd(0.0) : mu * cpow_n(n, -(0.5 + g));
            npow_d[n] = (mu == 0.0) ? cd(0.0) : mu * cpow_n(n, -(0.5 + d));
        }
        std::vector<cd> F(K + 1, cd(0.0)), G(K + 1, cd(0.0));
        for (std::uint64_t m = 1; m <= K; ++m) {
            for (std::uint64_t n = 1, k = m; k <= K; ++n, k += m) {
                F[k] += mpow_a[m] * npow_g[n];
                G[k] += mpow_b[m] * npow_d[n];
            }
        }
        cd acc = 0.0;
        for (std::uint64_t k = 1; k <= K; ++k) {
            if (k % r == 0) continue;
            acc += F[k] * G[k];
        }

        // Tail completion in the top primes.  Every k > K strips as
        // k = j * p^e with p > gpf(j), e in {1, 2} up to a negligible layer;
        // H is multiplicative with
        //   H(p)   = p^{-1-a-b} + p^{-1-g-d} - p^{-1-a-d} - p^{-1-b-g},
        //   H(p^2) = (p^{-1-2a} - p^{-1-a-g})(p^{-1-2b} - p^{-1-b-d}).
        // The j <= K part is summed exactly against prime-zeta prefix sums
        // (level one); the j > K part strips its top prime once more to land
        // at i <= K, giving the same sums with payload psi(q) L(q) where
        // L(q) is the prime-power tail beyond q (level two).  What remains
        // (two strips both beyond K, or exponents >= 3) sits two to three
        // orders below the 1e-3 oracle tolerance at |Re| <= 1/4.
        {
            const cd w[8] = {a + b,
                             g + d,
                             a + d,
                             b + g,
                             2.0 * a + 2.0 * b + 1.0,
                             2.0 * a + b + d + 1.0,
                             a + g + 2.0 * b + 1.0,
                             a + g + b + d + 1.0};
            const double sg[8] = {1.0, 1.0, -1.0, -1.0, 1.0, -1.0, -1.0, 1.0};
            const auto primes = primes_up_to(std::min<std::uint64_t>(4 * K, K + 8000000));
            const std::size_t np = primes.size();
            std::vector<std::vector<cd>> prefix(8);
            cd full[8];
            for (int i = 0; i < 8; ++i) {
                prefix[i].assign(np + 1, cd(0.0));
                for (std::size_t t = 0; t < np; ++t)
                    prefix[i][t + 1] = prefix[i][t] + cpow_n(primes[t], -(1.0 + w[i]));
                full[i] = prime_zeta(1.0 + w[i]);
            }
            auto idx_above = [&](double thr) {
                const std::uint64_t cut = static_cast<std::uint64_t>(std::floor(thr));
                return static_cast<std::size_t>(
                    std::upper_bound(primes.begin(), primes.end(), cut) - primes.begin());
            };
            // signed H(p^e) tails over primes strictly above thr, excluding r
            auto tail_from = [&](double thr, std::size_t idx, int lo, int hi) {
                cd v = 0.0;
                for (int i = lo; i < hi; ++i) {
                    cd t = full[i] - prefix[i][idx];
                    if (static_cast<double>(r) > thr) t -= cpow_n(r, -(1.0 + w[i]));
                    v += sg[i] * t;
                }
                return v;
            };
            // level-two payloads: phi_e(q) = H(q^e) * L(q) with L(q) the full
            // e <= 2 prime-power tail beyond q
            std::vector<cd> phi1(np + 1, cd(0.0)), phi2(np + 1, cd(0.0));
            for (std::size_t t = 0; t < np; ++t) {
                const std::uint64_t q = primes[t];
                if (q == r) {
                    phi1[t + 1] = phi1[t];
                    phi2[t + 1] = phi2[t];
                    continue;
                }
                const cd Lq = tail_from(static_cast<double>(q), t + 1, 0, 8);
                cd l1 = 0.0, l2 = 0.0;
                for (int i = 0; i < 4; ++i) l1 += sg[i] * cpow_n(q, -(1.0 + w[i]));
                for (int i = 4; i < 8; ++i) l2 += sg[i] * cpow_n(q, -(1.0 + w[i]));
                phi1[t + 1] = phi1[t] + l1 * Lq;
                phi2[t + 1] = phi2[t] + l2 * Lq;
            }
            cd corr = 0.0;
            for (std::uint64_t j = 1; j <= K; ++j) {
                if (j % r == 0) continue;
                const cd hj = F[j] * G[j];
                if (std::norm(hj) < 1e-60) continue;
                const double kj = static_cast<double>(K) / static_cast<double>(j);
                const double pj = static_cast<double>(sieve.gpf[j]);
                const double thr1 = std::max(kj, pj);
                const double thr2 = std::max(std::sqrt(kj), pj);
                const std::size_t i1 = idx_above(thr1), i2 = idx_above(thr2);
                corr += hj * (tail_from(thr1, i1, 0, 4) + tail_from(thr2, i2, 4, 8) +
                              (phi1.back() - phi1[i1]) + (phi2.back() - phi2[i2]));
            }
            acc += corr;
        }

        if (series_tail_estimate) {
            // divisor-bound estimate of the raw truncated mass (pre-completion)
            const double smin =
                std::min(std::min(a.real(), b.real()), std::min(g.real(), d.real()));
            const double lk = std::log(static_cast<double>(K));
            *series_tail_estimate = lk * lk * lk *
                                    std::pow(static_cast<double>(K), -2.0 * smin) /
                                    (2.0 * smin * kPi * kPi);
        }
        return acc;
    }

    // euler path: the exponent sums in the local factor are geometric, so each
    // local factor has the exact closed form
    //   L_p = (1 - p^{-1-b-g} - p^{-1-a-d} + p^{-1-g-d}) / (1 - p^{-1-a-b});
    // dividing by the local y factor leaves the absolutely convergent piece.
    if (std::abs(a.real()) >= 0.25 || std::abs(b.real()) >= 0.25 || std::abs(g.real()) >= 0.25 ||
        std::abs(d.real()) >= 0.25)
        throw std::domain_error("g_star: euler path needs |Re| < 1/4 for all shifts");
    const auto primes = primes_up_to(ctl.euler_cutoff);
    cd prod = 1.0;
    for (auto p : primes) {
        if (p == r) continue;
        const cd pgd = cpow_n(p, -(1.0 + g + d));
        const cd pad = cpow_n(p, -(1.0 + a + d));
        const cd pbg = cpow_n(p, -(1.0 + b + g));
        prod *= (1.0 - pbg - pad + pgd) * (1.0 - pgd) / ((1.0 - pad) * (1.0 - pbg));
    }
    return prod * y_star(a, b, g, d, r);
}

std::complex<double> mt_evaluate(const RatiosPoint& point, const TruncationControl& ctl,
                                 const FactorSieve& sieve) {
    const cd g1 = point.s1 - 0.5, d1 = point.s2 - 0.5;
    const cd direct = g_star(point.z1 - 0.5, point.z2 - 0.5, g1, d1, point.r, ctl,
                             GStarPath::euler, sieve);
    const cd flipped = g_star(0.5 - point.z2, 0.5 - point.z1, g1, d1, point.r, ctl,
                              GStarPath::euler, sieve);
    const cd rpow = std::exp((1.0 - point.z1 - point.z2) * std::log(static_cast<double>(point.r)));
    return direct + h_factor(point.z1, point.z2) * rpow * flipped;
}

std::complex<double> empirical_ratio_avg(const RatiosPoint& point, const CharacterTable& table) {
    if (point.r != table.r)
        throw std::invalid_argument("empirical_ratio_avg: point and table moduli differ");
    const std::uint64_t order = table.order;
    auto Lz1 = dirichlet_l_all(point.z1, table);
    auto Lz2 = dirichlet_l_all(point.z2, table);
    auto Ls1 = dirichlet_l_all(point.s1, table);
    auto Ls2 = dirichlet_l_all(point.s2, table);
    cd acc = 0.0;
    for (std::uint64_t j = 1; j < order; ++j) {
        const std::uint64_t jc = order - j;  // index of conj(chi_j)
        const cd den = Ls1[j] * Ls2[jc];
        if (std::abs(den) < 1e-12)
            throw std::domain_error("empirical_ratio_avg: L(s,chi) vanishes to working precision");
        acc += Lz1[j] * Lz2[jc] / den;
    }
    return acc / static_cast<double>(order - 1);
}

std::complex<double> twisted_ratio_avg(std::complex<double> s1, std::complex<double> s2,
                                       std::uint64_t m1, std::uint64_t m2,
                                       const CharacterTable& table) {
    if (m1 % table.r == 0 || m2 % table.r == 0)
        throw std::invalid_argument("twisted_ratio_avg: m1, m2 must be coprime to r");
    const std::uint64_t order = table.order;
    auto Ls1 = dirichlet_l_all(s1, table);
    auto Ls2 = dirichlet_l_all(s2, table);
    cd acc = 0.0;
    for (std::uint64_t j = 1; j < order; ++j) {
        const std::uint64_t jc = order - j;
        const cd den = Ls1[j] * Ls2[jc];
        if (std::abs(den) < 1e-12)
            throw std::domain_error("twisted_ratio_avg: L(s,chi) vanishes to working precision");
        acc += table.chi(j, m1) * std::conj(table.chi(j, m2)) / den;
    }
    return acc / static_cast<double>(order - 1);
}

std::complex<double> twisted_ratio_random_side(std::complex<double> s1, std::complex<double> s2,
                                               std::uint64_t m1, std::uint64_t m2, std::uint64_t r,
                                               const TruncationControl& ctl,
                                               const FactorSieve& sieve) {
    const std::uint64_t g = std::gcd(m1, m2);
    const std::uint64_t u1 = m1 / g, u2 = m2 / g;
    const std::uint64_t tmax = std::min(ctl.series_cutoff, sieve.limit / std::max(u1, u2));
    cd acc = 0.0;
    for (std::uint64_t t = 1; t <= tmax; ++t) {
        const std::uint64_t n1 = u2 * t, n2 = u1 * t;
        const double mu1 = sieve.mu[n1], mu2 = sieve.mu[n2];
        if (mu1 == 0.0 || mu2 == 0.0) continue;
        if ((m1 % r) * (n1 % r) % r == 0 || (m2 % r) * (n2 % r) % r == 0) continue;
        acc += mu1 * mu2 * cpow_n(n1, -s1) * cpow_n(n2, -s2);
    }
    return acc;
}

std::complex<double> twisted_ratio_random_closed_form(std::complex<double> s1,
                                                      std::complex<double> s2, std::uint64_t m1,
                                                      std::uint64_t m2, std::uint64_t r) {
    if (m1 % r == 0 || m2 % r == 0) return 0.0;
    const std::uint64_t gc = std::gcd(m1, m2);
    const std::uint64_t u1 = m1 / gc, u2 = m2 / gc;
    // mu(u1) mu(u2) u2^{-s1} u1^{-s2} prod_{p ∤ u1 u2 r} (1 + p^{-s1-s2})
    int sign = 1;
    std::vector<std::uint64_t> excluded;
    for (std::uint64_t u : {u1, u2}) {
        std::uint64_t m = u;
        for (std::uint64_t p = 2; p * p <= m; ++p) {
            if (m % p == 0) {
                m /= p;
                if (m % p == 0) return 0.0;  // u not squarefree
                sign = -sign;
                excluded.push_back(p);
            }
        }
        if (m > 1) {
            sign = -sign;
            excluded.push_back(m);
        }
    }
    excluded.push_back(r);
    const cd s = s1 + s2;
    cd prod = zeta(s) / zeta(2.0 * s);  // prod_p (1 + p^{-s})
    for (auto p : excluded) prod /= (1.0 + cpow_n(p, -s));
    return static_cast<double>(sign) * cpow_n(u2, -s1) * cpow_n(u1, -s2) * prod;
}

}  // namespace lcl
