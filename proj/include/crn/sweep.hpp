#pragma once

#include "crn/model.hpp"
#include "crn/montecarlo.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace crn::sweep {

struct SensingPair {
    double pd;
    double pf;
};

/// Parameters shared by every grid point. Per-relay variance lists of length
/// one are broadcast to every relay count in the sweep.
struct BaseConfig {
    double p0 = 0.8;
    double gamma_p_db = 10.0;
    double rate = 1.0;
    std::vector<double> sigma2_si{1.0};
    std::vector<double> sigma2_pi{0.2};
    double sigma2_d = 1.0;
    double sigma2_pd = 0.2;
    double sigma2_sd = 1.0;
};

/// Experiment grid: scheme x sensing pair x relay count x gamma_s.
struct SweepSpec {
    std::vector<double> gamma_s_db{0, 5, 10, 15, 20, 25, 30};
    std::vector<mc::Scheme> schemes{mc::Scheme::Direct, mc::Scheme::BestRelay,
                                    mc::Scheme::MultiRelay};
    std::vector<SensingPair> sensing_pairs{{0.95, 0.05}, {0.65, 0.35}};
    std::vector<int> relay_counts{6};
    std::uint64_t trials = 0;  // 0 = analytic only
    std::uint64_t seed = 1;
    BaseConfig base;

    /// Throws ConfigError naming the field whose invariant fails.
    void validate() const;

    std::size_t points() const
    {
        return gamma_s_db.size() * schemes.size() * sensing_pairs.size() * relay_counts.size();
    }
};

/// Parses the JSON config schema documented in README.md. Keys not present
/// keep their SweepSpec defaults; unknown keys are rejected.
SweepSpec parse_config(std::string_view json_text);
SweepSpec load_config(const std::filesystem::path& path);

std::string_view scheme_name(mc::Scheme s);
mc::Scheme parse_scheme(std::string_view name);

/// Full parameter set for one grid point.
SystemParams point_params(const SweepSpec& spec, SensingPair sensing, int n_relays,
                          double gamma_s_db);

struct SweepRow {
    mc::Scheme scheme = mc::Scheme::MultiRelay;
    int n_relays = 0;
    double pd = 0.0;
    double pf = 0.0;
    double gamma_s_db = 0.0;
    double analytic_outage = 0.0;
    std::optional<mc::OutageEstimate> mc;
};

double analytic_outage(const SystemParams& params, mc::Scheme scheme);

/// Evaluates the grid in scheme, sensing pair, relay count, gamma_s order
/// (each axis in the order given), handing rows to `sink` as they complete.
void run_sweep(const SweepSpec& spec, unsigned workers,
               const std::function<void(const SweepRow&)>& sink);
std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned workers);

std::string csv_header();
std::string format_csv_row(const SweepRow& row);

/// Streams the header and one flushed line per row.
void write_csv(std::ostream& out, const SweepSpec& spec, unsigned workers);

/// Reads rows written by write_csv. Throws ConfigError on malformed input.
std::vector<SweepRow> parse_csv(std::istream& in);

inline constexpr std::uint64_t kMinValidationTrials = 10'000;
inline constexpr double kZThreshold = 3.0;

struct PointScore {
    SweepRow row;
    double z = 0.0;
};

struct ValidationReport {
    std::size_t points = 0;
    std::size_t over_threshold = 0;
    double max_z = 0.0;
    std::vector<PointScore> offending;
    bool pass = false;
};

/// z = |analytic - mc| / mc_stderr. When the estimate sits at 0 or 1 its
/// stderr vanishes and the binomial stderr at the analytic value is used.
double z_score(const SweepRow& row);

/// PASS iff fewer than 1% of rows have z > 3. Every row needs an MC estimate
/// with at least kMinValidationTrials trials (std::invalid_argument otherwise).
ValidationReport validate_rows(const std::vector<SweepRow>& rows);

/// Runs the sweep then scores it.
ValidationReport validate(const SweepSpec& spec, unsigned workers);

void print_report(std::ostream& out, const ValidationReport& report);

}  // namespace crn::sweep
