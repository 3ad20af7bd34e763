// crn-outage: outage probability of cognitive relay networks with imperfect
// spectrum sensing. Closed forms, Monte Carlo, sweeps and cross-validation.

#include "crn/analytic.hpp"
#include "crn/sweep.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

namespace {

using namespace crn;

constexpr const char* kRateNote =
    "note: relayed schemes use delta = (2^(2R)-1)/gamma_s (two slots); "
    "direct uses (2^R-1)/gamma_s (one slot)";

struct Options {
    std::string config;
    std::vector<double> gamma_s_db;
    std::vector<std::string> schemes;
    std::optional<double> pd;
    std::optional<double> pf;
    std::vector<int> n_relays;
    std::optional<std::uint64_t> trials;
    std::optional<std::uint64_t> seed;
    unsigned workers = 1;
    std::string out;
    std::string from_csv;
};

void add_common(CLI::App* app, Options& o)
{
    app->add_option("--config", o.config, "JSON sweep config (see README)");
    app->add_option("--gamma-s-db", o.gamma_s_db, "Secondary SNR axis in dB, comma separated")
        ->delimiter(',');
    app->add_option("--scheme", o.schemes, "Schemes: direct,best,multi")->delimiter(',');
    app->add_option("--pd", o.pd, "Detection probability (replaces sensing_pairs; needs --pf)");
    app->add_option("--pf", o.pf, "False-alarm probability (replaces sensing_pairs; needs --pd)");
    app->add_option("--n-relays", o.n_relays, "Relay counts, comma separated")->delimiter(',');
    app->add_option("--trials", o.trials, "Monte Carlo trials per point (0 = analytic only)");
    app->add_option("--seed", o.seed, "Monte Carlo seed");
    app->add_option("--workers", o.workers, "Monte Carlo worker threads")
        ->check(CLI::PositiveNumber);
}

// Config file first, then flags on top.
sweep::SweepSpec build_spec(const Options& o)
{
    sweep::SweepSpec spec = o.config.empty() ? sweep::SweepSpec{} : sweep::load_config(o.config);
    if (!o.gamma_s_db.empty())
        spec.gamma_s_db = o.gamma_s_db;
    if (!o.schemes.empty()) {
        spec.schemes.clear();
        for (const auto& s : o.schemes)
            spec.schemes.push_back(sweep::parse_scheme(s));
    }
    if (o.pd.has_value() != o.pf.has_value())
        throw ConfigError("--pd and --pf must be given together");
    if (o.pd)
        spec.sensing_pairs = {{*o.pd, *o.pf}};
    if (!o.n_relays.empty())
        spec.relay_counts = o.n_relays;
    if (o.trials)
        spec.trials = *o.trials;
    if (o.seed)
        spec.seed = *o.seed;
    spec.validate();
    return spec;
}

void print_header(const char* scheme, int n, sweep::SensingPair sp, double g)
{
    std::printf("scheme=%s n_relays=%d pd=%.10g pf=%.10g gamma_s_db=%.10g\n", scheme, n, sp.pd,
                sp.pf, g);
}

template <class Fn>
void for_each_point(const sweep::SweepSpec& spec, Fn&& fn)
{
    for (mc::Scheme s : spec.schemes)
        for (const auto& sp : spec.sensing_pairs)
            for (int n : spec.relay_counts)
                for (double g : spec.gamma_s_db)
                    fn(s, sp, n, g);
}

int cmd_analytic(const Options& o)
{
    const auto spec = build_spec(o);
    std::puts(kRateNote);
    for_each_point(spec, [&](mc::Scheme s, sweep::SensingPair sp, int n, double g) {
        const SystemParams p = sweep::point_params(spec, sp, n, g);
        const Posterior post = posterior(p);
        const SnrThreshold thr = snr_threshold(p);
        analytic::OutageBreakdown b;
        switch (s) {
        case mc::Scheme::Direct:
            b = analytic::outage_direct(p);
            break;
        case mc::Scheme::BestRelay:
            b = analytic::outage_best_relay(p);
            break;
        case mc::Scheme::MultiRelay:
            b = analytic::outage_multi_relay(p);
            break;
        }
        print_header(std::string(sweep::scheme_name(s)).c_str(), n, sp, g);
        std::printf("  pi0=%.10g pi1=%.10g delta=%.10g delta_direct=%.10g\n", post.pi0, post.pi1,
                    thr.delta, thr.delta_direct);
        std::printf("  total=%.10g\n  empty_h0=%.10g\n  empty_h1=%.10g\n"
                    "  nonempty_h0=%.10g\n  nonempty_h1=%.10g\n",
                    b.total, b.empty_h0, b.empty_h1, b.nonempty_h0, b.nonempty_h1);
    });
    return 0;
}

int cmd_simulate(const Options& o)
{
    auto spec = build_spec(o);
    if (spec.trials == 0)
        throw ConfigError("simulate needs --trials >= 1");
    for_each_point(spec, [&](mc::Scheme s, sweep::SensingPair sp, int n, double g) {
        const SystemParams p = sweep::point_params(spec, sp, n, g);
        const auto est = mc::estimate_outage(p, s, spec.trials, spec.seed, o.workers);
        print_header(std::string(sweep::scheme_name(s)).c_str(), n, sp, g);
        std::printf("  p_hat=%.10g\n  stderr=%.10g\n  trials=%llu\n  seed=%llu\n", est.p_hat,
                    est.std_error, static_cast<unsigned long long>(est.trials),
                    static_cast<unsigned long long>(est.seed));
    });
    return 0;
}

int cmd_sweep(const Options& o)
{
    const auto spec = build_spec(o);
    std::cerr << kRateNote << '\n';
    if (o.out.empty()) {
        sweep::write_csv(std::cout, spec, o.workers);
    } else {
        std::ofstream f(o.out, std::ios::binary);
        if (!f)
            throw ConfigError("cannot open output file " + o.out);
        sweep::write_csv(f, spec, o.workers);
    }
    return 0;
}

int cmd_validate(const Options& o)
{
    sweep::ValidationReport rep;
    if (!o.from_csv.empty()) {
        std::ifstream f(o.from_csv);
        if (!f)
            throw ConfigError("cannot open " + o.from_csv);
        rep = sweep::validate_rows(sweep::parse_csv(f));
    } else {
        rep = sweep::validate(build_spec(o), o.workers);
    }
    sweep::print_report(std::cout, rep);
    return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Outage probability of multi-relay selection in cognitive radio networks"};
    app.require_subcommand(1);
    app.footer(
        "Defaults: P0=0.8, gamma_p=10 dB, R=1 bit/s/Hz, N=6, sigma2_si=sigma2_d=sigma2_sd=1,\n"
        "sigma2_pi=sigma2_pd=0.2, sensing pairs (0.95,0.05) and (0.65,0.35),\n"
        "gamma_s = 0..30 dB step 5, all schemes, trials=0, seed=1.");

    Options o;
    auto* analytic = app.add_subcommand("analytic", "Closed-form outage breakdown per point");
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo outage estimate per point");
    auto* sweep_cmd = app.add_subcommand("sweep", "Grid sweep as CSV");
    auto* validate = app.add_subcommand("validate", "Closed form vs Monte Carlo z-score report");
    for (auto* sub : {analytic, simulate, sweep_cmd, validate})
        add_common(sub, o);
    sweep_cmd->add_option("--out", o.out, "Write CSV here instead of stdout");
    validate->add_option("--from-csv", o.from_csv, "Score an existing sweep CSV instead of running one");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*analytic)
            return cmd_analytic(o);
        if (*simulate)
            return cmd_simulate(o);
        if (*sweep_cmd)
            return cmd_sweep(o);
        if (*validate)
            return cmd_validate(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
