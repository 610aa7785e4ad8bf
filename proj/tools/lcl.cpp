// lcl: experiment runner for character-sum, random-multiplicative and
// unitary-trace statistics.  Every subcommand emits a ResultRecord as CSV or
// JSON; stochastic subcommands require an explicit --seed.
#include <chrono>
#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lcl/arith.hpp"
#include "lcl/characters.hpp"
#include "lcl/errors.hpp"
#include "lcl/harper.hpp"
#include "lcl/ratios.hpp"
#include "lcl/results.hpp"
#include "lcl/rng.hpp"
#include "lcl/rmt.hpp"
#include "lcl/special.hpp"
#include "lcl/steinhaus.hpp"

namespace {

using cd = std::complex<double>;
constexpr const char* kVersion = "lcl 0.1.0";
constexpr std::uint64_t kMaxSieveLimit = 30000000;

struct CommonOpts {
    std::string out = "-";
    std::string format = "json";
    std::string timestamp;  // empty -> current UTC, "none" -> omitted
    std::uint64_t seed = 0;
    int threads = 1;
    CLI::Option* seed_opt = nullptr;

    bool seed_given() const { return seed_opt != nullptr && seed_opt->count() > 0; }
};

void add_common(CLI::App* sub, CommonOpts& opts, bool seed_required) {
    sub->fallthrough();  // lets --config (a main-app option) appear after the subcommand
    sub->add_option("--out", opts.out, "Output path, '-' for stdout")->envname("LCL_OUT");
    sub->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->envname("LCL_FORMAT");
    sub->add_option("--timestamp", opts.timestamp,
                    "Provenance timestamp override ('none' omits the field)")
        ->envname("LCL_TIMESTAMP");
    sub->add_option("--threads", opts.threads, "Worker threads")
        ->check(CLI::Range(1, 256))
        ->envname("LCL_THREADS");
    opts.seed_opt = sub->add_option("--seed", opts.seed, "RNG seed (decimal)")
                        ->envname("LCL_SEED");
    if (seed_required) opts.seed_opt->required();
}

std::string utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

void finish(lcl::ResultRecord& rec, const CommonOpts& opts) {
    rec.add_provenance("version", kVersion);
    if (opts.seed_given()) rec.add_provenance("seed", std::to_string(opts.seed));
    if (opts.timestamp != "none")
        rec.add_provenance("timestamp", opts.timestamp.empty() ? utc_now() : opts.timestamp);
    lcl::emit_results(rec, opts.format, opts.out);
}

lcl::FactorSieve make_sieve(std::uint64_t limit) {
    if (limit > kMaxSieveLimit)
        throw std::out_of_range("requested sieve limit " + std::to_string(limit) +
                                " exceeds the configured maximum " +
                                std::to_string(kMaxSieveLimit));
    return lcl::build_factor_sieve(std::max<std::uint64_t>(1, limit));
}

lcl::WeightChoice parse_weight(const std::string& c) {
    if (c == "lambda" || c == "liouville") return lcl::WeightChoice::liouville;
    if (c == "mu" || c == "mobius") return lcl::WeightChoice::mobius;
    if (c == "unit") return lcl::WeightChoice::unit;
    throw CLI::ValidationError("--c", "weight must be lambda, mu, or unit");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for twisted character sums, Steinhaus random "
                 "multiplicative functions, ratio averages, and Haar-unitary traces"};
    app.set_config("--config", "", "Read options from a TOML/INI file with [subcommand] sections");
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    // ----------------------------------------------------------------- sieve
    auto* sieve_cmd = app.add_subcommand("sieve", "Sieved lambda/mu/gpf tables and smooth counts");
    CommonOpts sieve_opts;
    std::uint64_t sieve_limit = 1000;
    double psi_x = 0.0, psi_y = 0.0;
    std::uint64_t query_n = 0;
    sieve_cmd->add_option("--limit", sieve_limit, "Sieve limit")->required()->check(CLI::PositiveNumber);
    sieve_cmd->add_option("--psi-x", psi_x, "Smooth-count x");
    sieve_cmd->add_option("--psi-y", psi_y, "Smooth-count y");
    sieve_cmd->add_option("--query", query_n, "Return (lambda, mu, gpf) at this n");
    add_common(sieve_cmd, sieve_opts, false);
    sieve_cmd->final_callback([&] {
        auto sieve = make_sieve(sieve_limit);
        lcl::ResultRecord rec;
        rec.subcommand = "sieve";
        rec.add_config("limit", sieve_limit);
        std::int64_t mertens = 0;
        for (std::uint64_t n = 1; n <= sieve_limit; ++n)
            mertens += static_cast<std::int64_t>(sieve.mu[n]) *
                       static_cast<std::int64_t>(sieve_limit / n);
        rec.columns = {"limit", "primes_count", "mertens_identity"};
        std::vector<double> row = {static_cast<double>(sieve_limit),
                                   static_cast<double>(sieve.primes.size()),
                                   static_cast<double>(mertens)};
        if (psi_x > 0.0 && psi_y > 0.0) {
            rec.add_config("psi_x", psi_x);
            rec.add_config("psi_y", psi_y);
            rec.columns.push_back("psi");
            row.push_back(static_cast<double>(lcl::smooth_count(sieve, psi_x, psi_y)));
        }
        if (query_n > 0) {
            rec.add_config("query", query_n);
            auto t = lcl::query(sieve, query_n);
            rec.columns.insert(rec.columns.end(), {"query_lambda", "query_mu", "query_gpf"});
            row.insert(row.end(), {static_cast<double>(t.lambda), static_cast<double>(t.mu),
                                   static_cast<double>(t.gpf)});
        }
        rec.rows.push_back(row);
        finish(rec, sieve_opts);
    });

    // --------------------------------------------------------------- charsum
    auto* charsum_cmd = app.add_subcommand("charsum", "Character-average moments of twisted sums");
    CommonOpts charsum_opts;
    std::uint64_t cs_r = 101;
    double cs_x = 100.0, cs_q = 0.5;
    std::string cs_c = "lambda";
    charsum_cmd->add_option("--r", cs_r, "Prime modulus")->required();
    charsum_cmd->add_option("--x", cs_x, "Sum length")->required()->check(CLI::PositiveNumber);
    charsum_cmd->add_option("--q", cs_q, "Moment exponent (|sum|^{2q})")
        ->check(CLI::Range(0.0, 1.0));
    charsum_cmd->add_option("--c", cs_c, "Weight: lambda, mu, or unit");
    add_common(charsum_cmd, charsum_opts, false);
    charsum_cmd->final_callback([&] {
        auto sieve = make_sieve(static_cast<std::uint64_t>(cs_x));
        auto table = lcl::build_character_table(cs_r);
        auto m = lcl::avg_abs_moment(table, cs_x, cs_q, parse_weight(cs_c), sieve);
        lcl::ResultRecord rec;
        rec.subcommand = "charsum";
        rec.add_config("r", cs_r);
        rec.add_config("x", cs_x);
        rec.add_config("q", cs_q);
        rec.add_config("c", cs_c);
        rec.columns = {"r", "x", "q", "moment_all", "moment_nonprincipal", "moment_all_over_sqrtx"};
        rec.rows.push_back({static_cast<double>(cs_r), cs_x, cs_q, m.over_all,
                            m.over_nonprincipal, m.over_all / std::pow(cs_x, cs_q)});
        finish(rec, charsum_opts);
    });

    // -------------------------------------------------------------------- ap
    auto* ap_cmd = app.add_subcommand("ap", "Weighted sums over arithmetic progressions");
    CommonOpts ap_opts;
    std::uint64_t ap_r = 3;
    double ap_x = 10.0;
    std::int64_t ap_a = 1;
    std::string ap_c = "lambda";
    ap_cmd->add_option("--x", ap_x, "Sum length")->required();
    ap_cmd->add_option("--r", ap_r, "Prime modulus")->required();
    ap_cmd->add_option("--a", ap_a, "Residue class")->required();
    ap_cmd->add_option("--c", ap_c, "Weight: lambda, mu, or unit");
    add_common(ap_cmd, ap_opts, false);
    ap_cmd->final_callback([&] {
        auto sieve = make_sieve(static_cast<std::uint64_t>(ap_x));
        auto table = lcl::build_character_table(ap_r);
        auto res = lcl::ap_progression_sum(ap_x, table, ap_a, parse_weight(ap_c), sieve);
        lcl::ResultRecord rec;
        rec.subcommand = "ap";
        rec.add_config("x", ap_x);
        rec.add_config("r", ap_r);
        rec.add_config("a", static_cast<std::uint64_t>(ap_a));
        rec.add_config("c", ap_c);
        rec.columns = {"x", "r", "a", "direct", "decomposition", "decomposition_checked"};
        rec.rows.push_back({ap_x, static_cast<double>(ap_r), static_cast<double>(ap_a), res.direct,
                            res.decomposition, res.decomposition_checked ? 1.0 : 0.0});
        finish(rec, ap_opts);
    });

    // ------------------------------------------------------------- steinhaus
    auto* st_cmd = app.add_subcommand("steinhaus", "Monte Carlo moments of random "
                                                   "multiplicative sums");
    CommonOpts st_opts;
    double st_x = 100.0, st_q = 0.5;
    std::uint64_t st_trials = 1000;
    std::string st_c = "lambda";
    st_cmd->add_option("--x", st_x, "Sum length")->required()->check(CLI::PositiveNumber);
    st_cmd->add_option("--q", st_q, "Moment exponent")->check(CLI::Range(0.0, 1.0));
    st_cmd->add_option("--trials", st_trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
    st_cmd->add_option("--c", st_c, "Weight: lambda, mu, or unit");
    add_common(st_cmd, st_opts, true);
    st_cmd->final_callback([&] {
        auto sieve = make_sieve(static_cast<std::uint64_t>(st_x));
        auto m = lcl::mc_abs_moment(st_x, st_q, parse_weight(st_c), st_trials, st_opts.seed, sieve,
                                    st_opts.threads);
        lcl::ResultRecord rec;
        rec.subcommand = "steinhaus";
        rec.add_config("x", st_x);
        rec.add_config("q", st_q);
        rec.add_config("trials", st_trials);
        rec.add_config("c", st_c);
        rec.columns = {"x", "q", "trials", "estimate", "stderr", "estimate_over_sqrtx"};
        rec.rows.push_back({st_x, st_q, static_cast<double>(st_trials), m.estimate, m.stderr_,
                            m.estimate / std::pow(st_x, st_q)});
        finish(rec, st_opts);
    });

    // --------------------------------------------------------- orthogonality
    auto* orth_cmd = app.add_subcommand("orthogonality",
                                        "Deterministic vs random twisted second moments");
    CommonOpts orth_opts;
    std::uint64_t orth_r = 10007, orth_m1 = 2, orth_m2 = 1;
    double orth_x = 500.0, orth_eta = 0.25;
    std::string orth_c = "lambda";
    orth_cmd->add_option("--r", orth_r, "Prime modulus")->required();
    orth_cmd->add_option("--x", orth_x, "Sum length")->required();
    orth_cmd->add_option("--m1", orth_m1, "First twist");
    orth_cmd->add_option("--m2", orth_m2, "Second twist");
    orth_cmd->add_option("--c", orth_c, "Weight: lambda, mu, or unit");
    orth_cmd->add_option("--eta", orth_eta, "Nominal conjectural exponent for the report");
    add_common(orth_cmd, orth_opts, false);
    orth_cmd->final_callback([&] {
        auto sieve = make_sieve(static_cast<std::uint64_t>(orth_x));
        auto table = lcl::build_character_table(orth_r);
        lcl::ConjectureParams params;
        params.eta = orth_eta;
        auto g = lcl::orthogonality_gap(orth_m1, orth_m2, orth_x, table, parse_weight(orth_c),
                                        sieve, params);
        lcl::ResultRecord rec;
        rec.subcommand = "orthogonality";
        rec.add_config("r", orth_r);
        rec.add_config("x", orth_x);
        rec.add_config("m1", orth_m1);
        rec.add_config("m2", orth_m2);
        rec.add_config("c", orth_c);
        rec.add_config("eta_nominal", orth_eta);
        rec.columns = {"deterministic_re", "deterministic_im", "random_re",
                       "random_im",        "gap_abs",          "gap_normalized"};
        rec.rows.push_back({g.deterministic.real(), g.deterministic.imag(), g.random_side.real(),
                            g.random_side.imag(), std::abs(g.gap), g.normalized});
        finish(rec, orth_opts);
    });

    // ---------------------------------------------------------------- ratios
    auto* ratios_cmd = app.add_subcommand("ratios", "Ratio-average main term vs the "
                                                    "character-family average");
    CommonOpts ratios_opts;
    std::uint64_t ra_r = 101;
    cd ra_z1{0.5, 0.7}, ra_z2{0.5, -1.3}, ra_s1{0.6, 0.4}, ra_s2{0.6, -0.4};
    std::uint64_t ra_series = 200000, ra_euler = 100000;
    std::uint64_t ra_m1 = 0, ra_m2 = 0;
    double ra_omega = 0.25;
    bool ra_skip_empirical = false;
    ratios_cmd->add_option("--r", ra_r, "Prime modulus")->required();
    ratios_cmd->add_option("--z1", ra_z1, "Numerator shift z1 (re im)");
    ratios_cmd->add_option("--z2", ra_z2, "Numerator shift z2 (re im)");
    ratios_cmd->add_option("--s1", ra_s1, "Denominator shift s1 (re im)");
    ratios_cmd->add_option("--s2", ra_s2, "Denominator shift s2 (re im)");
    ratios_cmd->add_option("--series-cutoff", ra_series, "Shifted-convolution series cutoff");
    ratios_cmd->add_option("--euler-cutoff", ra_euler, "Largest prime in Euler products");
    ratios_cmd->add_option("--omega", ra_omega, "Nominal conjectural saving exponent");
    ratios_cmd->add_flag("--mt-only", ra_skip_empirical, "Skip the character-side average");
    ratios_cmd->add_option("--m1", ra_m1, "Twist m1 (with --m2: twisted variant instead)");
    ratios_cmd->add_option("--m2", ra_m2, "Twist m2");
    add_common(ratios_cmd, ratios_opts, false);
    ratios_cmd->final_callback([&] {
        lcl::RatiosPoint pt{ra_z1, ra_z2, ra_s1, ra_s2, ra_r};
        lcl::TruncationControl ctl;
        ctl.series_cutoff = ra_series;
        ctl.euler_cutoff = ra_euler;
        lcl::ResultRecord rec;
        rec.subcommand = "ratios";
        rec.add_config("r", ra_r);
        rec.add_config("z1_re", ra_z1.real());
        rec.add_config("z1_im", ra_z1.imag());
        rec.add_config("z2_re", ra_z2.real());
        rec.add_config("z2_im", ra_z2.imag());
        rec.add_config("s1_re", ra_s1.real());
        rec.add_config("s1_im", ra_s1.imag());
        rec.add_config("s2_re", ra_s2.real());
        rec.add_config("s2_im", ra_s2.imag());
        rec.add_config("euler_cutoff", ra_euler);
        rec.add_config("omega_nominal", ra_omega);
        if (ra_m1 > 0 && ra_m2 > 0) {
            // twisted variant: chi(m1) conj(chi(m2)) / (L(s1,chi) L(s2,conj chi))
            auto table = lcl::build_character_table(ra_r);
            auto sieve2 = make_sieve(std::min<std::uint64_t>(ra_series, kMaxSieveLimit));
            const cd chi_side = lcl::twisted_ratio_avg(ra_s1, ra_s2, ra_m1, ra_m2, table);
            const cd rand_series =
                lcl::twisted_ratio_random_side(ra_s1, ra_s2, ra_m1, ra_m2, ra_r, ctl, sieve2);
            const cd rand_closed =
                lcl::twisted_ratio_random_closed_form(ra_s1, ra_s2, ra_m1, ra_m2, ra_r);
            rec.add_config("m1", ra_m1);
            rec.add_config("m2", ra_m2);
            rec.columns = {"r",         "T",         "chi_side_re",   "chi_side_im",
                           "random_re", "random_im", "random_series_re", "random_series_im",
                           "diff_abs"};
            rec.rows.push_back({static_cast<double>(ra_r), pt.T(), chi_side.real(),
                                chi_side.imag(), rand_closed.real(), rand_closed.imag(),
                                rand_series.real(), rand_series.imag(),
                                std::abs(chi_side - rand_closed)});
            finish(rec, ratios_opts);
            return;
        }
        auto sieve = make_sieve(2);
        const cd mt = lcl::mt_evaluate(pt, ctl, sieve);
        rec.columns = {"r", "T", "mt_re", "mt_im"};
        std::vector<double> row = {static_cast<double>(ra_r), pt.T(), mt.real(), mt.imag()};
        if (!ra_skip_empirical) {
            auto table = lcl::build_character_table(ra_r);
            const cd emp = lcl::empirical_ratio_avg(pt, table);
            const double eps = ra_s1.real() - 0.5;
            const double predicted =
                std::pow(1.0 + pt.T(), eps) * std::pow(static_cast<double>(ra_r), -ra_omega);
            rec.columns.insert(rec.columns.end(),
                               {"empirical_re", "empirical_im", "diff_abs", "predicted_error"});
            row.insert(row.end(), {emp.real(), emp.imag(), std::abs(emp - mt), predicted});
        }
        rec.rows.push_back(row);
        finish(rec, ratios_opts);
    });

    // ------------------------------------------------------------------- rmt
    auto* rmt_cmd = app.add_subcommand("rmt", "Haar-unitary symmetric-power trace moments");
    CommonOpts rmt_opts;
    int rmt_n = 5;
    std::vector<int> rmt_k = {10};
    std::uint64_t rmt_trials = 1000;
    rmt_cmd->add_option("--n", rmt_n, "Matrix dimension")->required()->check(CLI::PositiveNumber);
    rmt_cmd->add_option("--k", rmt_k, "Symmetric-power orders (sweep)")->required();
    rmt_cmd->add_option("--trials", rmt_trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
    add_common(rmt_cmd, rmt_opts, true);
    rmt_cmd->final_callback([&] {
        lcl::ResultRecord rec;
        rec.subcommand = "rmt";
        rec.add_config("n", static_cast<std::uint64_t>(rmt_n));
        rec.add_config("trials", rmt_trials);
        rec.columns = {"N", "k", "trials", "mean_abs", "stderr", "mean_abs_sq", "stderr_sq"};
        for (int k : rmt_k) {
            auto m = lcl::mc_sym_abs_moment(rmt_n, k, rmt_trials,
                                            lcl::keyed_u64(rmt_opts.seed, static_cast<std::uint64_t>(k)), rmt_opts.threads);
            rec.rows.push_back({static_cast<double>(rmt_n), static_cast<double>(k),
                                static_cast<double>(rmt_trials), m.mean_abs, m.stderr_abs,
                                m.mean_abs_sq, m.stderr_abs_sq});
        }
        finish(rec, rmt_opts);
    });

    // ---------------------------------------------------------------- harper
    auto* harper_cmd = app.add_subcommand("harper", "Randomization-pipeline diagnostics");
    CommonOpts harper_opts;
    std::string h_op = "params";
    double h_x = 1e6, h_epsilon = 0.1, h_T0 = 1000.0, h_quad = 0.05;
    double h_P = 10.0, h_Q = 30.0, h_X = 100.0, h_t = 0.0, h_tmax = 50.0;
    double h_pdelta = 0.05;
    int h_pn = 6, h_k = 0, h_em_k = 1;
    std::uint64_t h_r = 10000019ULL, h_trials = 0;
    std::string h_c = "lambda", h_weights = "unit";
    std::uint64_t h_j = 1;
    std::vector<std::uint32_t> h_pset = {2, 3};
    std::vector<int> h_jvec;
    harper_cmd
        ->add_option("--op", h_op,
                     "One of: params, partition, sk, sieve-sums, euler-int, perron, even-moment, "
                     "sigma")
        ->required()
        ->check(CLI::IsMember({"params", "partition", "sk", "sieve-sums", "euler-int", "perron",
                               "even-moment", "sigma"}));
    harper_cmd->add_option("--x", h_x, "Length parameter x");
    harper_cmd->add_option("--r", h_r, "Prime modulus");
    harper_cmd->add_option("--epsilon", h_epsilon, "Epsilon parameter");
    harper_cmd->add_option("--t0", h_T0, "Perron truncation height");
    harper_cmd->add_option("--quad-step", h_quad, "Quadrature step");
    harper_cmd->add_option("--bigp", h_P, "Prime cutoff P");
    harper_cmd->add_option("--q-cap", h_Q, "Smoothness cap Q");
    harper_cmd->add_option("--bigx", h_X, "Smoothing parameter X");
    harper_cmd->add_option("--t", h_t, "Sieve-sum t parameter");
    harper_cmd->add_option("--tmax", h_tmax, "Critical-integral truncation");
    harper_cmd->add_option("--pn", h_pn, "Partition N");
    harper_cmd->add_option("--pdelta", h_pdelta, "Partition delta");
    harper_cmd->add_option("--k", h_k, "Shift index k");
    harper_cmd->add_option("--em-k", h_em_k, "Even-moment exponent k");
    harper_cmd->add_option("--pset", h_pset, "Prime set for the even moment");
    harper_cmd->add_option("--jvec", h_jvec, "Conditioning index vector (length 2M+1)");
    harper_cmd->add_option("--c", h_c, "Weight: lambda, mu, or unit");
    harper_cmd->add_option("--weights", h_weights, "unit, char, or sample")
        ->check(CLI::IsMember({"unit", "char", "sample"}));
    harper_cmd->add_option("--j", h_j, "Character index for --weights char");
    harper_cmd->add_option("--trials", h_trials, "Monte Carlo trials");
    add_common(harper_cmd, harper_opts, false);
    harper_cmd->final_callback([&] {
        lcl::ResultRecord rec;
        rec.subcommand = "harper";
        rec.add_config("op", h_op);
        auto need_seed = [&] {
            if (!harper_opts.seed_given())
                throw CLI::ValidationError("--seed", "this harper op draws samples; --seed is "
                                                     "mandatory for reproducibility");
        };
        std::unique_ptr<lcl::CharacterTable> table;
        auto weights_of = [&](const lcl::FactorSieve& sv,
                              std::uint64_t span) -> lcl::Weights {
            if (h_weights == "unit") return lcl::Weights::unit();
            if (h_weights == "char") {
                table = std::make_unique<lcl::CharacterTable>(lcl::build_character_table(h_r));
                return lcl::Weights::character(table.get(), h_j);
            }
            need_seed();
            auto sample = lcl::sample_steinhaus(span, harper_opts.seed);
            return lcl::Weights::sample(std::make_shared<const std::vector<cd>>(
                lcl::steinhaus_values(sample, sv, span)));
        };

        if (h_op == "params") {
            rec.add_config("x", h_x);
            rec.add_config("r", h_r);
            rec.add_config("epsilon", h_epsilon);
            auto hp = lcl::validate_harper_params(std::log(h_x), h_r, h_epsilon);
            rec.columns = {"log_x",          "log_P",
                           "Q",              "X",
                           "N",              "delta",
                           "M",              "Y",
                           "S",              "p_lattice_exact",
                           "preconditions",  "cond_ratios_ok",
                           "cond_ratios_lhs_log", "cond_ratios_rhs_log",
                           "cond_moment_ok", "cond_moment_lhs",
                           "cond_moment_rhs", "numerics_ok"};
            rec.rows.push_back({hp.log_x, hp.log_P, hp.Q, hp.X, static_cast<double>(hp.N),
                                hp.delta, static_cast<double>(hp.M), static_cast<double>(hp.Y),
                                static_cast<double>(hp.S), hp.p_lattice_exact ? 1.0 : 0.0,
                                hp.preconditions_met ? 1.0 : 0.0, hp.cond_ratios_ok ? 1.0 : 0.0,
                                hp.cond_ratios_lhs_log, hp.cond_ratios_rhs_log,
                                hp.cond_moment_ok ? 1.0 : 0.0, hp.cond_moment_lhs,
                                hp.cond_moment_rhs, hp.numerics_ok ? 1.0 : 0.0});
        } else if (h_op == "partition") {
            rec.add_config("N", static_cast<std::uint64_t>(h_pn));
            rec.add_config("delta", h_pdelta);
            lcl::PartitionOfUnity part(h_pn, h_pdelta);
            rec.columns = {"N", "delta", "kernel_order", "x", "g_at_x", "top_at_x",
                           "identity_residual"};
            const double at = h_t;
            double sum = part.eval(h_pn + 1, at);
            const double top = sum;
            for (int j = -h_pn; j <= h_pn; ++j) sum += part.eval(j, at);
            rec.rows.push_back({static_cast<double>(h_pn), h_pdelta, part.kernel_order(), at,
                                part.g(at), top, sum - 1.0});
        } else if (h_op == "sk") {
            auto sieve = make_sieve(static_cast<std::uint64_t>(h_P) + 1);
            auto w = weights_of(sieve, static_cast<std::uint64_t>(h_P) + 1);
            rec.add_config("k", static_cast<std::uint64_t>(h_k));
            rec.add_config("P", h_P);
            rec.add_config("c", h_c);
            rec.add_config("weights", h_weights);
            rec.columns = {"k", "P", "value"};
            rec.rows.push_back({static_cast<double>(h_k), h_P,
                                lcl::s_statistic(h_k, h_P, w, parse_weight(h_c), sieve)});
        } else if (h_op == "sieve-sums") {
            auto sieve = make_sieve(static_cast<std::uint64_t>(std::max(h_x, h_t)));
            std::optional<double> topt;
            if (h_t > 0.0) topt = h_t;
            auto s = lcl::applied_sieve_sums(h_x, h_P, h_Q, h_X, sieve, topt);
            rec.add_config("x", h_x);
            rec.add_config("P", h_P);
            rec.add_config("Q", h_Q);
            rec.add_config("X", h_X);
            if (topt) rec.add_config("t", *topt);
            rec.columns = {"sum1", "sum1_normalized", "sum2", "sum2_normalized"};
            rec.rows.push_back({s.sum1, s.sum1_normalized, s.sum2, s.sum2_normalized});
        } else if (h_op == "euler-int") {
            need_seed();
            auto sieve = make_sieve(static_cast<std::uint64_t>(h_P) + 1);
            auto w = weights_of(sieve, static_cast<std::uint64_t>(h_P) + 1);
            auto ci = lcl::critical_integral(w, h_P, h_tmax, h_quad, sieve);
            rec.add_config("P", h_P);
            rec.add_config("tmax", h_tmax);
            rec.add_config("quad_step", h_quad);
            rec.columns = {"P", "tmax", "value", "tail_bound"};
            rec.rows.push_back({h_P, h_tmax, ci.value, ci.tail_bound});
        } else if (h_op == "perron") {
            auto sieve = make_sieve(static_cast<std::uint64_t>(
                std::max(h_x, h_weights == "sample" ? 20000.0 : 0.0)));
            auto w = weights_of(sieve, std::max<std::uint64_t>(
                                           static_cast<std::uint64_t>(h_x), 20000));
            auto res = lcl::perron_check(h_x, w, parse_weight(h_c), h_r, h_T0, h_epsilon, h_quad,
                                         sieve, harper_opts.threads);
            rec.add_config("x", h_x);
            rec.add_config("r", h_r);
            rec.add_config("c", h_c);
            rec.add_config("T0", h_T0);
            rec.add_config("epsilon", h_epsilon);
            rec.add_config("quad_step", h_quad);
            rec.columns = {"direct_re",  "direct_im", "contour_re",      "contour_im",
                           "error",      "perron_scale", "quad_refinement"};
            rec.rows.push_back({res.direct.real(), res.direct.imag(), res.contour.real(),
                                res.contour.imag(), res.error, res.perron_scale,
                                res.quad_refinement});
        } else if (h_op == "even-moment") {
            auto qs_size = [&] {
                std::vector<std::uint64_t> q;
                for (auto p : h_pset) {
                    q.push_back(p);
                    q.push_back(static_cast<std::uint64_t>(p) * p);
                }
                std::sort(q.begin(), q.end());
                q.erase(std::unique(q.begin(), q.end()), q.end());
                return q.size();
            }();
            std::uint64_t top = 0;
            for (auto p : h_pset)
                top = std::max<std::uint64_t>(top, static_cast<std::uint64_t>(p) * p);
            auto sieve = make_sieve(std::max(static_cast<std::uint64_t>(h_x), top));
            const std::vector<cd> a(qs_size, cd(1.0));
            if (h_trials > 0) need_seed();
            auto res = lcl::even_moment_quantities(h_pset, a, h_em_k, h_x, parse_weight(h_c),
                                                   sieve, h_trials, harper_opts.seed,
                                                   harper_opts.threads);
            rec.add_config("x", h_x);
            rec.add_config("k", static_cast<std::uint64_t>(h_em_k));
            rec.add_config("c", h_c);
            rec.columns = {"lhs", "lhs_stderr", "lhs_exact", "rhs", "ratio"};
            rec.rows.push_back({res.lhs, res.lhs_stderr, res.lhs_exact ? 1.0 : 0.0, res.rhs,
                                res.ratio});
        } else if (h_op == "sigma") {
            if (h_jvec.empty())
                throw CLI::ValidationError("--jvec", "sigma needs an index vector of length 2M+1");
            auto sieve = make_sieve(static_cast<std::uint64_t>(h_x));
            lcl::PartitionOfUnity part(h_pn, h_pdelta);
            lcl::SigmaSide side;
            if (h_weights == "char") {
                side.kind = lcl::SigmaSide::Kind::character;
                table = std::make_unique<lcl::CharacterTable>(lcl::build_character_table(h_r));
                side.table = table.get();
            } else {
                need_seed();
                side.kind = lcl::SigmaSide::Kind::random;
                side.trials = std::max<std::uint64_t>(1, h_trials);
                side.seed = harper_opts.seed;
                side.threads = harper_opts.threads;
            }
            auto res = lcl::sigma_and_conditioned_moment(h_jvec, side, h_x, parse_weight(h_c),
                                                         h_P, h_Q, sieve, part);
            rec.add_config("x", h_x);
            rec.add_config("P", h_P);
            rec.add_config("Q", h_Q);
            rec.add_config("side", h_weights);
            rec.columns = {"sigma", "conditioned_second_moment"};
            rec.rows.push_back({res.sigma, res.conditioned_second_moment});
        }
        finish(rec, harper_opts);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // config / usage errors
    } catch (const lcl::tolerance_error& e) {
        std::fprintf(stderr, "tolerance failure: %s\n", e.what());
        return 4;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "precondition violated: %s\n", e.what());
        return 3;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "precondition violated: %s\n", e.what());
        return 3;
    } catch (const std::out_of_range& e) {
        std::fprintf(stderr, "range error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
