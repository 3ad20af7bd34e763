#include "crn/sweep.hpp"

#include "crn/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace crn::sweep {

namespace {

std::string fmt10(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

std::vector<std::string> split(const std::string& line, char sep)
{
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, sep))
        out.push_back(field);
    if (!line.empty() && line.back() == sep)
        out.emplace_back();
    return out;
}

double to_double(const std::string& s, std::size_t line_no)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size())
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("csv line " + std::to_string(line_no) + ": bad number '" + s + "'");
    }
}

}  // namespace

double analytic_outage(const SystemParams& params, mc::Scheme scheme)
{
    switch (scheme) {
    case mc::Scheme::Direct:
        return analytic::outage_direct(params).total;
    case mc::Scheme::BestRelay:
        return analytic::outage_best_relay(params).total;
    case mc::Scheme::MultiRelay:
        return analytic::outage_multi_relay(params).total;
    }
    throw std::logic_error("unknown scheme");
}

void run_sweep(const SweepSpec& spec, unsigned workers,
               const std::function<void(const SweepRow&)>& sink)
{
    spec.validate();
    for (mc::Scheme scheme : spec.schemes)
        for (const SensingPair& sp : spec.sensing_pairs)
            for (int n : spec.relay_counts)
                for (double g : spec.gamma_s_db) {
                    const SystemParams p = point_params(spec, sp, n, g);
                    SweepRow row;
                    row.scheme = scheme;
                    row.n_relays = n;
                    row.pd = sp.pd;
                    row.pf = sp.pf;
                    row.gamma_s_db = g;
                    row.analytic_outage = analytic_outage(p, scheme);
                    if (spec.trials > 0)
                        row.mc = mc::estimate_outage(p, scheme, spec.trials, spec.seed, workers);
                    sink(row);
                }
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned workers)
{
    std::vector<SweepRow> rows;
    rows.reserve(spec.points());
    run_sweep(spec, workers, [&](const SweepRow& r) { rows.push_back(r); });
    return rows;
}

std::string csv_header()
{
    return "scheme,n_relays,pd,pf,gamma_s_db,analytic_outage,mc_outage,mc_stderr,trials,seed";
}

std::string format_csv_row(const SweepRow& row)
{
    std::string line;
    line += scheme_name(row.scheme);
    line += ',' + std::to_string(row.n_relays);
    line += ',' + fmt10(row.pd);
    line += ',' + fmt10(row.pf);
    line += ',' + fmt10(row.gamma_s_db);
    line += ',' + fmt10(row.analytic_outage);
    if (row.mc) {
        line += ',' + fmt10(row.mc->p_hat);
        line += ',' + fmt10(row.mc->std_error);
        line += ',' + std::to_string(row.mc->trials);
        line += ',' + std::to_string(row.mc->seed);
    } else {
        line += ",,,,";
    }
    return line;
}

void write_csv(std::ostream& out, const SweepSpec& spec, unsigned workers)
{
    out << csv_header() << '\n' << std::flush;
    run_sweep(spec, workers, [&](const SweepRow& r) { out << format_csv_row(r) << '\n' << std::flush; });
}

std::vector<SweepRow> parse_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || line != csv_header())
        throw ConfigError("csv: missing or unexpected header line");

    std::vector<SweepRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        const auto f = split(line, ',');
        if (f.size() != 10)
            throw ConfigError("csv line " + std::to_string(line_no) + ": expected 10 fields, got " +
                              std::to_string(f.size()));
        SweepRow row;
        row.scheme = parse_scheme(f[0]);
        row.n_relays = static_cast<int>(to_double(f[1], line_no));
        row.pd = to_double(f[2], line_no);
        row.pf = to_double(f[3], line_no);
        row.gamma_s_db = to_double(f[4], line_no);
        row.analytic_outage = to_double(f[5], line_no);
        if (!f[6].empty()) {
            mc::OutageEstimate est;
            est.p_hat = to_double(f[6], line_no);
            est.std_error = to_double(f[7], line_no);
            est.trials = static_cast<std::uint64_t>(to_double(f[8], line_no));
            est.seed = std::stoull(f[9]);
            row.mc = est;
        }
        rows.push_back(row);
    }
    return rows;
}

double z_score(const SweepRow& row)
{
    if (!row.mc)
        throw std::invalid_argument("z_score: row has no Monte Carlo estimate");
    const double diff = std::fabs(row.analytic_outage - row.mc->p_hat);
    double se = row.mc->std_error;
    if (!(se > 0.0)) {
        const double p = std::clamp(row.analytic_outage, 0.0, 1.0);
        se = std::sqrt(p * (1.0 - p) / static_cast<double>(row.mc->trials));
    }
    if (se > 0.0)
        return diff / se;
    return diff == 0.0 ? 0.0 : INFINITY;
}

ValidationReport validate_rows(const std::vector<SweepRow>& rows)
{
    ValidationReport rep;
    for (const auto& row : rows) {
        if (!row.mc || row.mc->trials < kMinValidationTrials)
            throw std::invalid_argument("validate needs at least " +
                                        std::to_string(kMinValidationTrials) +
                                        " Monte Carlo trials per point (use --trials)");
        const double z = z_score(row);
        ++rep.points;
        rep.max_z = std::max(rep.max_z, z);
        if (z > kZThreshold) {
            ++rep.over_threshold;
            rep.offending.push_back({row, z});
        }
    }
    // Fewer than 1% of points may exceed z = 3.
    rep.pass = rep.points > 0 && rep.over_threshold * 100 < rep.points;
    return rep;
}

ValidationReport validate(const SweepSpec& spec, unsigned workers)
{
    if (spec.trials < kMinValidationTrials)
        throw std::invalid_argument("validate needs at least " +
                                    std::to_string(kMinValidationTrials) +
                                    " Monte Carlo trials per point (got " +
                                    std::to_string(spec.trials) + "; use --trials)");
    return validate_rows(run_sweep(spec, workers));
}

void print_report(std::ostream& out, const ValidationReport& rep)
{
    out << "points: " << rep.points << '\n';
    out << "max_z: " << fmt10(rep.max_z) << '\n';
    out << "points_over_z3: " << rep.over_threshold << '\n';
    for (const auto& p : rep.offending) {
        out << "  offending: " << format_csv_row(p.row) << " z=" << fmt10(p.z) << '\n';
    }
    out << (rep.pass ? "PASS" : "FAIL") << '\n';
}

}  // namespace crn::sweep
