#include "lcl/characters.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "lcl/dft.hpp"
#include "lcl/errors.hpp"

namespace lcl {

namespace {

using cd = std::complex<double>;
constexpr double kTwoPi = 6.28318530717958647692528676655900577;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    using u128 = unsigned __int128;  // GCC/Clang extension, fine for this project
    return static_cast<std::uint64_t>((static_cast<u128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t acc = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) acc = mulmod(acc, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return acc;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::uint64_t floor_x(double x) {
    if (x < 1.0) return 0;
    return static_cast<std::uint64_t>(std::floor(x));
}

void require_range(double x, const FactorSieve& sieve) {
    if (floor_x(x) > sieve.limit)
        throw std::out_of_range("x = " + std::to_string(x) + " exceeds sieve limit " +
                                std::to_string(sieve.limit));
}

}  // namespace

double weight_value(const FactorSieve& sieve, WeightChoice c, std::uint64_t n) {
    switch (c) {
        case WeightChoice::liouville: return sieve.lambda[n];
        case WeightChoice::mobius: return sieve.mu[n];
        case WeightChoice::unit: return 1.0;
    }
    return 0.0;
}

std::complex<double> CharacterTable::chi(std::uint64_t j, std::uint64_t n) const {
    const std::uint64_t m = n % r;
    if (m == 0) return 0.0;
    const double ang = kTwoPi * static_cast<double>((j * ind[m]) % order) / static_cast<double>(order);
    return cd(std::cos(ang), std::sin(ang));
}

std::uint32_t CharacterTable::index_of(std::uint64_t n) const {
    const std::uint64_t m = n % r;
    if (m == 0) throw std::invalid_argument("index_of: argument divisible by the modulus");
    return ind[m];
}

CharacterTable build_character_table(std::uint64_t r) {
    if (r < 3 || r % 2 == 0 || !is_prime_u64(r))
        throw std::invalid_argument("build_character_table: modulus " + std::to_string(r) +
                                    " is not an odd prime");
    if (r > 100000000ULL)
        throw std::invalid_argument("build_character_table: modulus " + std::to_string(r) +
                                    " exceeds the dense discrete-log table limit 1e8");
    CharacterTable t;
    t.r = r;
    t.order = r - 1;

    const auto divisors = prime_divisors(r - 1);
    for (std::uint64_t g = 2; g < r; ++g) {
        bool primitive = true;
        for (std::uint64_t q : divisors) {
            if (powmod(g, (r - 1) / q, r) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            t.g = g;
            break;
        }
    }

    t.ind.assign(r, 0);
    std::uint64_t acc = 1;
    for (std::uint64_t e = 0; e < r - 1; ++e) {
        t.ind[acc] = static_cast<std::uint32_t>(e);
        acc = mulmod(acc, t.g, r);
    }
    return t;
}

std::vector<std::complex<double>> all_twisted_sums(const CharacterTable& table, double x,
                                                   WeightChoice c, const FactorSieve& sieve,
                                                   TwistPath path) {
    require_range(x, sieve);
    const std::uint64_t nx = floor_x(x);
    const std::uint64_t n_chars = table.order;

    if (path == TwistPath::naive) {
        std::vector<cd> out(n_chars, 0.0);
        for (std::uint64_t j = 0; j < n_chars; ++j) {
            cd acc = 0.0;
            for (std::uint64_t n = 1; n <= nx; ++n)
                acc += weight_value(sieve, c, n) * table.chi(j, n);
            out[j] = acc;
        }
        return out;
    }

    // bucket c(n) by discrete log of n mod r; multiples of r contribute 0
    std::vector<cd> buckets(n_chars, 0.0);
    for (std::uint64_t n = 1; n <= nx; ++n) {
        const std::uint64_t m = n % table.r;
        if (m == 0) continue;
        buckets[table.ind[m]] += weight_value(sieve, c, n);
    }
    // A_j = sum_d buckets[d] exp(+2 pi i j d / (r-1))
    return dft(buckets);
}

AbsMoment avg_abs_moment(const CharacterTable& table, double x, double q, WeightChoice c,
                         const FactorSieve& sieve) {
    if (q < 0.0 || q > 1.0)
        throw std::invalid_argument("avg_abs_moment: q must lie in [0,1]");
    const auto sums = all_twisted_sums(table, x, c, sieve);
    double total = 0.0, nonprincipal = 0.0;
    for (std::size_t j = 0; j < sums.size(); ++j) {
        const double v = (q == 0.0) ? 1.0 : std::pow(std::norm(sums[j]), q);
        total += v;
        if (j != 0) nonprincipal += v;
    }
    AbsMoment m;
    m.over_all = total / static_cast<double>(table.order);
    m.over_nonprincipal =
        (table.order >= 2) ? nonprincipal / static_cast<double>(table.order - 1) : 0.0;
    return m;
}

TwistedMomentResult twisted_second_moment_deterministic(const CharacterTable& table,
                                                        std::uint64_t m1, std::uint64_t m2,
                                                        double x, WeightChoice c,
                                                        const FactorSieve& sieve,
                                                        MomentPath path) {
    if (m1 % table.r == 0 || m2 % table.r == 0)
        throw std::invalid_argument("twisted_second_moment: m1*m2 must be coprime to r");
    require_range(x, sieve);

    TwistedMomentResult res;
    res.m1 = m1;
    res.m2 = m2;
    res.x = x;
    res.r = table.r;
    res.c = c;

    if (path == MomentPath::congruence) {
        // sum over n1,n2 <= x, r∤n1n2, m1 n1 ≡ m2 n2 (mod r); grouped by the
        // residue class forced on n2
        const std::uint64_t nx = floor_x(x);
        const std::uint64_t r = table.r;
        std::vector<double> class_sum(r, 0.0);
        for (std::uint64_t n = 1; n <= nx; ++n) class_sum[n % r] += weight_value(sieve, c, n);
        const std::uint64_t m2inv = powmod(m2 % r, r - 2, r);
        const std::uint64_t ratio = mulmod(m1 % r, m2inv, r);  // n2 ≡ ratio * n1
        double acc = 0.0;
        for (std::uint64_t n1 = 1; n1 <= nx; ++n1) {
            const std::uint64_t a = n1 % r;
            if (a == 0) continue;
            acc += weight_value(sieve, c, n1) * class_sum[mulmod(ratio, a, r)];
        }
        res.value = acc;
        return res;
    }

    const auto sums = all_twisted_sums(
        table, x, c, sieve, path == MomentPath::naive ? TwistPath::naive : TwistPath::dft);
    // chi_j(m1) conj(chi_j(m2)) = exp(2 pi i j (ind(m1)-ind(m2)) / (r-1))
    const std::uint64_t order = table.order;
    const std::int64_t shift =
        (static_cast<std::int64_t>(table.index_of(m1)) - static_cast<std::int64_t>(table.index_of(m2)) +
         static_cast<std::int64_t>(order)) %
        static_cast<std::int64_t>(order);
    cd acc = 0.0;
    for (std::uint64_t j = 0; j < order; ++j) {
        const double ang = kTwoPi * static_cast<double>((j * static_cast<std::uint64_t>(shift)) % order) /
                           static_cast<double>(order);
        acc += cd(std::cos(ang), std::sin(ang)) * std::norm(sums[j]);
    }
    res.value = acc / static_cast<double>(order);
    return res;
}

ApSumResult ap_progression_sum(double x, const CharacterTable& table, std::int64_t a,
                               WeightChoice c, const FactorSieve& sieve) {
    require_range(x, sieve);
    const std::uint64_t nx = floor_x(x);
    const std::uint64_t r = table.r;
    const std::uint64_t am = static_cast<std::uint64_t>(((a % static_cast<std::int64_t>(r)) +
                                                         static_cast<std::int64_t>(r))) %
                             r;

    ApSumResult res{};
    double direct = 0.0;
    for (std::uint64_t n = 1; n <= nx; ++n)
        if (n % r == am) direct += weight_value(sieve, c, n);
    res.direct = direct;

    if (am == 0) {
        res.decomposition = 0.0;
        res.decomposition_checked = false;
        return res;
    }

    // 1_{n≡a (r)} = E_chi conj(chi(a)) chi(n) for gcd(a,r)=1
    const auto sums = all_twisted_sums(table, x, c, sieve);
    cd acc = 0.0;
    for (std::uint64_t j = 0; j < table.order; ++j) acc += std::conj(table.chi(j, am)) * sums[j];
    acc /= static_cast<double>(table.order);
    res.decomposition = acc.real();
    res.decomposition_checked = true;
    if (std::abs(acc.real() - direct) > 1e-6 || std::abs(acc.imag()) > 1e-6)
        throw tolerance_error("ap_progression_sum: orthogonality decomposition disagrees with the "
                              "direct sum beyond 1e-6");
    return res;
}

}  // namespace lcl
