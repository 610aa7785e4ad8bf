#include "lcl/steinhaus.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "lcl/parallel.hpp"
#include "lcl/rng.hpp"

namespace lcl {

namespace {

using cd = std::complex<double>;
constexpr double kTwoPi = 6.28318530717958647692528676655900577;

cd phase_at(std::uint64_t seed, std::uint64_t p) {
    const double theta = kTwoPi * unit_double(keyed_u64(seed, p));
    return cd(std::cos(theta), std::sin(theta));
}

std::uint64_t floor_x(double x) {
    if (x < 1.0) return 0;
    return static_cast<std::uint64_t>(std::floor(x));
}

}  // namespace

std::complex<double> SteinhausSample::at_prime(std::uint64_t p) const {
    return phase_at(seed, p);
}

SteinhausSample sample_steinhaus(std::uint64_t limit, std::uint64_t seed) {
    if (limit < 1) throw std::invalid_argument("sample_steinhaus: limit must be >= 1");
    SteinhausSample s;
    s.limit = limit;
    s.seed = seed;
    s.primes = primes_up_to(limit);
    s.fp.resize(s.primes.size());
    for (std::size_t i = 0; i < s.primes.size(); ++i) s.fp[i] = phase_at(seed, s.primes[i]);
    return s;
}

std::vector<std::complex<double>> steinhaus_values(const SteinhausSample& sample,
                                                   const FactorSieve& sieve, std::uint64_t n_max) {
    if (n_max > sample.limit || n_max > sieve.limit)
        throw std::out_of_range("steinhaus_values: n_max exceeds sample or sieve limit");
    std::vector<cd> f(n_max + 1);
    if (n_max == 0) return f;
    f[1] = 1.0;
    std::vector<cd> at_p(n_max + 1, cd(0.0));
    for (std::uint64_t n = 2; n <= n_max; ++n) {
        const std::uint64_t p = sieve.spf[n];
        if (at_p[p] == cd(0.0)) at_p[p] = phase_at(sample.seed, p);
        f[n] = f[n / p] * at_p[p];
    }
    return f;
}

McMoment mc_abs_moment(double x, double q, WeightChoice c, std::uint64_t trials,
                       std::uint64_t seed, const FactorSieve& sieve, int threads) {
    if (trials == 0) throw std::invalid_argument("mc_abs_moment: trials must be positive");
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("mc_abs_moment: q must lie in [0,1]");
    if (x < 1.0) throw std::invalid_argument("mc_abs_moment: x must be >= 1");
    const std::uint64_t nx = floor_x(x);
    if (nx > sieve.limit)
        throw std::out_of_range("mc_abs_moment: x exceeds sieve limit " + std::to_string(sieve.limit));

    std::vector<double> vals(trials);
    parallel_for(static_cast<std::int64_t>(trials), threads, [&](std::int64_t t) {
        const std::uint64_t trial_seed = keyed_u64(seed, 0x5354524cULL, static_cast<std::uint64_t>(t));
        // incremental f(n) over n = spf * m, summed in ascending n
        std::vector<cd> f(nx + 1);
        cd sum = 0.0;
        if (nx >= 1) {
            f[1] = 1.0;
            sum = weight_value(sieve, c, 1);
        }
        for (std::uint64_t n = 2; n <= nx; ++n) {
            const std::uint64_t p = sieve.spf[n];
            const cd fn = (n == p) ? phase_at(trial_seed, p) : f[n / p] * f[p];
            f[n] = fn;
            sum += weight_value(sieve, c, n) * fn;
        }
        vals[static_cast<std::size_t>(t)] = (q == 0.0) ? 1.0 : std::pow(std::norm(sum), q);
    });

    McMoment out;
    out.trials = trials;
    out.estimate = pairwise_sum(vals) / static_cast<double>(trials);
    if (trials >= 2) {
        std::vector<double> sq(trials);
        for (std::uint64_t t = 0; t < trials; ++t) {
            const double d = vals[t] - out.estimate;
            sq[t] = d * d;
        }
        const double var = pairwise_sum(sq) / static_cast<double>(trials - 1);
        out.stderr_ = std::sqrt(var / static_cast<double>(trials));
    }
    return out;
}

std::complex<double> random_second_moment_exact(std::uint64_t m1, std::uint64_t m2, double x,
                                                WeightChoice c, const FactorSieve& sieve,
                                                std::optional<std::uint64_t> restrict_mod_r) {
    if (m1 < 1 || m2 < 1) throw std::invalid_argument("random_second_moment: m1, m2 must be >= 1");
    const std::uint64_t nx = floor_x(x);
    if (nx > sieve.limit)
        throw std::out_of_range("random_second_moment: x exceeds sieve limit");
    const std::uint64_t g = std::gcd(m1, m2);
    const std::uint64_t u1 = m1 / g, u2 = m2 / g;
    const std::uint64_t tmax = nx / std::max(u1, u2);
    double acc = 0.0;
    for (std::uint64_t t = 1; t <= tmax; ++t) {
        const std::uint64_t n1 = u2 * t, n2 = u1 * t;
        if (restrict_mod_r && (n1 % *restrict_mod_r == 0 || n2 % *restrict_mod_r == 0)) continue;
        acc += weight_value(sieve, c, n1) * weight_value(sieve, c, n2);
    }
    return acc;
}

double random_second_moment_closed_form(std::uint64_t m1, std::uint64_t m2, double x,
                                        const FactorSieve& sieve) {
    const std::uint64_t g = std::gcd(m1, m2);
    const std::uint64_t u1 = m1 / g, u2 = m2 / g;
    const std::uint64_t tmax = floor_x(x) / std::max(u1, u2);
    if (u1 * u2 > sieve.limit)
        throw std::out_of_range("random_second_moment_closed_form: u1*u2 exceeds sieve limit");
    // lambda(u2 t) lambda(u1 t) = lambda(u1 u2) for every t
    return static_cast<double>(sieve.lambda[u1 * u2]) * static_cast<double>(tmax);
}

}  // namespace lcl
