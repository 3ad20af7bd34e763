#include "crn/sweep.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace crn::sweep {

namespace {

using nlohmann::json;

const std::set<std::string> kKnownKeys = {
    "gamma_s_db", "schemes",  "sensing_pairs", "relay_counts", "trials",    "seed",
    "p0",         "gamma_p_db", "rate",        "sigma2_si",    "sigma2_pi", "sigma2_d",
    "sigma2_pd",  "sigma2_sd",
};

[[noreturn]] void field_error(const std::string& field, const std::string& what)
{
    throw ConfigError("config field '" + field + "': " + what);
}

double get_number(const json& j, const std::string& field)
{
    if (!j.is_number())
        field_error(field, "expected a number, got " + std::string(j.type_name()));
    return j.get<double>();
}

std::uint64_t get_count(const json& j, const std::string& field)
{
    if (!j.is_number_integer() || (j.is_number_integer() && j.get<std::int64_t>() < 0))
        field_error(field, "expected a nonnegative integer");
    return j.get<std::uint64_t>();
}

std::vector<double> get_numbers(const json& j, const std::string& field)
{
    std::vector<double> out;
    if (j.is_number()) {
        out.push_back(j.get<double>());
        return out;
    }
    if (!j.is_array())
        field_error(field, "expected a number or an array of numbers");
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(get_number(j[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

bool is_probability(double x) { return x >= 0.0 && x <= 1.0; }

std::string num(double x)
{
    std::ostringstream os;
    os << x;
    return os.str();
}

}  // namespace

std::string_view scheme_name(mc::Scheme s)
{
    switch (s) {
    case mc::Scheme::Direct:
        return "direct";
    case mc::Scheme::BestRelay:
        return "best";
    case mc::Scheme::MultiRelay:
        return "multi";
    }
    return "?";
}

mc::Scheme parse_scheme(std::string_view name)
{
    if (name == "direct")
        return mc::Scheme::Direct;
    if (name == "best")
        return mc::Scheme::BestRelay;
    if (name == "multi")
        return mc::Scheme::MultiRelay;
    throw ConfigError("unknown scheme '" + std::string(name) + "' (expected direct, best or multi)");
}

void SweepSpec::validate() const
{
    if (gamma_s_db.empty())
        field_error("gamma_s_db", "sweep axis must not be empty");
    for (double g : gamma_s_db)
        if (!std::isfinite(g))
            field_error("gamma_s_db", "values must be finite");
    if (schemes.empty())
        field_error("schemes", "at least one scheme is required");
    if (std::set<mc::Scheme>(schemes.begin(), schemes.end()).size() != schemes.size())
        field_error("schemes", "duplicate scheme");
    if (sensing_pairs.empty())
        field_error("sensing_pairs", "at least one (pd, pf) pair is required");
    for (const auto& sp : sensing_pairs) {
        if (!is_probability(sp.pd))
            field_error("pd", "must lie in [0,1], got " + num(sp.pd));
        if (!is_probability(sp.pf))
            field_error("pf", "must lie in [0,1], got " + num(sp.pf));
    }
    if (relay_counts.empty())
        field_error("relay_counts", "at least one relay count is required");
    for (int n : relay_counts) {
        if (n < 1)
            field_error("relay_counts", "N must be >= 1, got " + std::to_string(n));
        if (n > kMaxRelays)
            field_error("relay_counts",
                        "N = " + std::to_string(n) + " exceeds the cap of " +
                            std::to_string(kMaxRelays) +
                            " (the closed form enumerates 2^N - 1 decoding sets)");
        auto check_len = [n](const std::vector<double>& v, const char* field) {
            if (v.size() != 1 && v.size() != static_cast<std::size_t>(n))
                field_error(field, "has " + std::to_string(v.size()) +
                                       " entries; expected 1 or N = " + std::to_string(n));
        };
        check_len(base.sigma2_si, "sigma2_si");
        check_len(base.sigma2_pi, "sigma2_pi");
    }
    if (!std::isfinite(base.gamma_p_db))
        field_error("gamma_p_db", "must be finite");

    // Remaining invariants are the model's; re-badge its message with the
    // config field it came from.
    for (const auto& sp : sensing_pairs)
        for (int n : relay_counts) {
            try {
                point_params(*this, sp, n, gamma_s_db.front()).validate();
            } catch (const ConfigError& e) {
                throw ConfigError(std::string("invalid configuration: ") + e.what());
            }
        }
}

SweepSpec parse_config(std::string_view json_text)
{
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object())
        throw ConfigError("config parse error: top level must be a JSON object");
    for (const auto& [key, _] : j.items())
        if (!kKnownKeys.contains(key))
            throw ConfigError("config field '" + key + "': unknown key");

    SweepSpec spec;
    if (j.contains("gamma_s_db"))
        spec.gamma_s_db = get_numbers(j["gamma_s_db"], "gamma_s_db");
    if (j.contains("schemes")) {
        const json& s = j["schemes"];
        if (!s.is_array())
            field_error("schemes", "expected an array of scheme names");
        spec.schemes.clear();
        for (const auto& name : s) {
            if (!name.is_string())
                field_error("schemes", "scheme names must be strings");
            spec.schemes.push_back(parse_scheme(name.get<std::string>()));
        }
    }
    if (j.contains("sensing_pairs")) {
        const json& s = j["sensing_pairs"];
        if (!s.is_array())
            field_error("sensing_pairs", "expected an array of [pd, pf] pairs");
        spec.sensing_pairs.clear();
        for (std::size_t i = 0; i < s.size(); ++i) {
            const std::string field = "sensing_pairs[" + std::to_string(i) + "]";
            if (!s[i].is_array() || s[i].size() != 2)
                field_error(field, "expected [pd, pf]");
            spec.sensing_pairs.push_back({get_number(s[i][0], field + "[0]"),
                                          get_number(s[i][1], field + "[1]")});
        }
    }
    if (j.contains("relay_counts")) {
        const json& r = j["relay_counts"];
        spec.relay_counts.clear();
        auto push = [&](const json& v, const std::string& field) {
            if (!v.is_number_integer())
                field_error(field, "expected an integer");
            spec.relay_counts.push_back(static_cast<int>(v.get<std::int64_t>()));
        };
        if (r.is_array())
            for (std::size_t i = 0; i < r.size(); ++i)
                push(r[i], "relay_counts[" + std::to_string(i) + "]");
        else
            push(r, "relay_counts");
    }
    if (j.contains("trials"))
        spec.trials = get_count(j["trials"], "trials");
    if (j.contains("seed"))
        spec.seed = get_count(j["seed"], "seed");

    BaseConfig& b = spec.base;
    if (j.contains("p0"))
        b.p0 = get_number(j["p0"], "p0");
    if (j.contains("gamma_p_db"))
        b.gamma_p_db = get_number(j["gamma_p_db"], "gamma_p_db");
    if (j.contains("rate"))
        b.rate = get_number(j["rate"], "rate");
    if (j.contains("sigma2_si"))
        b.sigma2_si = get_numbers(j["sigma2_si"], "sigma2_si");
    if (j.contains("sigma2_pi"))
        b.sigma2_pi = get_numbers(j["sigma2_pi"], "sigma2_pi");
    if (j.contains("sigma2_d"))
        b.sigma2_d = get_number(j["sigma2_d"], "sigma2_d");
    if (j.contains("sigma2_pd"))
        b.sigma2_pd = get_number(j["sigma2_pd"], "sigma2_pd");
    if (j.contains("sigma2_sd"))
        b.sigma2_sd = get_number(j["sigma2_sd"], "sigma2_sd");

    spec.validate();
    return spec;
}

SweepSpec load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

SystemParams point_params(const SweepSpec& spec, SensingPair sensing, int n_relays,
                          double gamma_s_db)
{
    const BaseConfig& b = spec.base;
    auto broadcast = [n_relays](const std::vector<double>& v) {
        return v.size() == 1 ? std::vector<double>(static_cast<std::size_t>(n_relays), v.front())
                             : v;
    };
    SystemParams p;
    p.p0 = b.p0;
    p.pd = sensing.pd;
    p.pf = sensing.pf;
    p.gamma_s = db_to_linear(gamma_s_db);
    p.gamma_p = db_to_linear(b.gamma_p_db);
    p.rate = b.rate;
    p.n_relays = n_relays;
    p.variances.sigma2_si = broadcast(b.sigma2_si);
    p.variances.sigma2_pi = broadcast(b.sigma2_pi);
    p.variances.sigma2_d = b.sigma2_d;
    p.variances.sigma2_pd = b.sigma2_pd;
    p.variances.sigma2_sd = b.sigma2_sd;
    return p;
}

}  // namespace crn::sweep
