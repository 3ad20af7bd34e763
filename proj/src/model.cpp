#include "crn/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace crn {

namespace {

bool is_probability(double x) { return x >= 0.0 && x <= 1.0; }

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw ConfigError(what);
}

std::string fmt(double x)
{
    std::ostringstream os;
    os << x;
    return os.str();
}

// 2^x - 1; exact for integer x, and without cancellation for small x.
double pow2m1(double x)
{
    return x < 0.5 ? std::expm1(x * std::log(2.0)) : std::exp2(x) - 1.0;
}

}  // namespace

ChannelVariances ChannelVariances::uniform(int n_relays, double si, double pi, double d, double pd,
                                           double sd)
{
    ChannelVariances v;
    v.sigma2_si.assign(static_cast<std::size_t>(std::max(n_relays, 0)), si);
    v.sigma2_pi.assign(static_cast<std::size_t>(std::max(n_relays, 0)), pi);
    v.sigma2_d = d;
    v.sigma2_pd = pd;
    v.sigma2_sd = sd;
    return v;
}

bool ChannelVariances::homogeneous() const
{
    auto all_equal = [](const std::vector<double>& v) {
        return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
    };
    return all_equal(sigma2_si) && all_equal(sigma2_pi);
}

void SystemParams::validate() const
{
    require(is_probability(p0), "p0 must lie in [0,1], got " + fmt(p0));
    require(is_probability(pd), "pd must lie in [0,1], got " + fmt(pd));
    require(is_probability(pf), "pf must lie in [0,1], got " + fmt(pf));
    require(p0 * pd + (1.0 - p0) * pf > 0.0,
            "p0*pd + (1-p0)*pf must be > 0 (sensing never declares a hole)");
    require(std::isfinite(gamma_s) && gamma_s > 0.0, "gamma_s must be > 0, got " + fmt(gamma_s));
    require(std::isfinite(gamma_p) && gamma_p > 0.0, "gamma_p must be > 0, got " + fmt(gamma_p));
    require(std::isfinite(rate) && rate > 0.0, "rate must be > 0, got " + fmt(rate));
    require(n_relays >= 1, "n_relays must be >= 1, got " + std::to_string(n_relays));
    require(n_relays <= kMaxRelays,
            "n_relays = " + std::to_string(n_relays) + " exceeds the cap of " +
                std::to_string(kMaxRelays) +
                " (the closed form enumerates 2^N - 1 decoding sets)");

    const auto n = static_cast<std::size_t>(n_relays);
    require(variances.sigma2_si.size() == n,
            "sigma2_si has " + std::to_string(variances.sigma2_si.size()) +
                " entries, expected n_relays = " + std::to_string(n_relays));
    require(variances.sigma2_pi.size() == n,
            "sigma2_pi has " + std::to_string(variances.sigma2_pi.size()) +
                " entries, expected n_relays = " + std::to_string(n_relays));
    for (std::size_t i = 0; i < n; ++i) {
        require(variances.sigma2_si[i] > 0.0 && std::isfinite(variances.sigma2_si[i]),
                "sigma2_si[" + std::to_string(i) + "] must be > 0");
        require(variances.sigma2_pi[i] > 0.0 && std::isfinite(variances.sigma2_pi[i]),
                "sigma2_pi[" + std::to_string(i) + "] must be > 0");
    }
    require(variances.sigma2_d > 0.0 && std::isfinite(variances.sigma2_d), "sigma2_d must be > 0");
    require(variances.sigma2_pd > 0.0 && std::isfinite(variances.sigma2_pd), "sigma2_pd must be > 0");
    require(variances.sigma2_sd > 0.0 && std::isfinite(variances.sigma2_sd), "sigma2_sd must be > 0");
}

SystemParams reference_params(int n_relays, double gamma_s_db, double pd, double pf)
{
    SystemParams p;
    p.p0 = 0.8;
    p.pd = pd;
    p.pf = pf;
    p.gamma_s = db_to_linear(gamma_s_db);
    p.gamma_p = db_to_linear(10.0);
    p.rate = 1.0;
    p.n_relays = n_relays;
    p.variances = ChannelVariances::uniform(n_relays, 1.0, 0.2, 1.0, 0.2, 1.0);
    return p;
}

Posterior posterior(double p0, double pd, double pf)
{
    const double h0 = p0 * pd;
    const double h1 = (1.0 - p0) * pf;
    const double den = h0 + h1;
    if (!(den > 0.0))
        throw ConfigError("posterior undefined: sensing never declares a hole");
    const double pi0 = h0 / den;
    return {pi0, h1 / den};
}

SnrThreshold snr_threshold(double rate, double gamma_s)
{
    if (!(rate > 0.0))
        throw std::domain_error("snr_threshold: rate must be > 0");
    if (!(gamma_s > 0.0))
        throw std::domain_error("snr_threshold: gamma_s must be > 0");
    return {pow2m1(2.0 * rate) / gamma_s, pow2m1(rate) / gamma_s};
}

double db_to_linear(double x_db) { return std::pow(10.0, x_db / 10.0); }

double linear_to_db(double x) { return 10.0 * std::log10(x); }

}  // namespace crn
