#include "crn/analytic.hpp"

#include "crn/specfun.hpp"
#include "crn/summation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace crn::analytic {

namespace {

void check_delta(double delta)
{
    if (!(delta >= 0.0) || !std::isfinite(delta))
        throw std::domain_error("threshold delta must be finite and >= 0");
}

void check_positive(double x, const char* name)
{
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::domain_error(std::string(name) + " must be finite and > 0");
}

void check_shape(int k)
{
    if (k < 1)
        throw std::domain_error("decoding-set size must be >= 1");
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// Pr(|h_s|^2 > delta * (gamma_p |h_p|^2 + 1)), the complement of p_below_h1.
double p_above_h1(double delta, double sigma2_s, double sigma2_p, double gamma_p)
{
    return std::exp(-delta / sigma2_s) / (1.0 + sigma2_p * gamma_p * delta / sigma2_s);
}

double binomial(int n, int k)
{
    double c = 1.0;
    for (int i = 1; i <= k; ++i)
        c = c * (n - k + i) / i;
    return std::round(c);
}

// First-hop decode probabilities, per relay, under one hypothesis.
struct FirstHop {
    std::vector<double> success;
    std::vector<double> failure;
};

FirstHop first_hop(const SystemParams& p, double delta, Hypothesis h)
{
    FirstHop hop;
    const auto n = static_cast<std::size_t>(p.n_relays);
    hop.success.resize(n);
    hop.failure.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double si = p.variances.sigma2_si[i];
        if (h == Hypothesis::H0) {
            hop.success[i] = std::exp(-delta / si);
            hop.failure[i] = p_below_h0(delta, si);
        } else {
            const double pi = p.variances.sigma2_pi[i];
            hop.success[i] = p_above_h1(delta, si, pi, p.gamma_p);
            hop.failure[i] = p_below_h1(delta, si, pi, p.gamma_p);
        }
    }
    return hop;
}

double all_fail(const FirstHop& hop)
{
    double prod = 1.0;
    for (double f : hop.failure)
        prod *= f;
    return prod;
}

// sum over non-empty D of Pr(D) * tail[|D|], one mask at a time.
double enumerate_nonempty(const FirstHop& hop, const std::vector<double>& tail)
{
    const int n = static_cast<int>(hop.success.size());
    const std::uint32_t end = std::uint32_t{1} << n;
    CompensatedSum sum;
    for (std::uint32_t mask = 1; mask < end; ++mask) {
        const DecodingSet set{mask};
        double prod = tail[static_cast<std::size_t>(set.cardinality())];
        for (int i = 0; i < n; ++i)
            prod *= set.contains(i) ? hop.success[static_cast<std::size_t>(i)]
                                    : hop.failure[static_cast<std::size_t>(i)];
        sum += prod;
    }
    return sum.value();
}

// Same sum when every relay shares one success probability: sets of equal
// size are equiprobable, C(N,k) of them.
double grouped_nonempty(const FirstHop& hop, const std::vector<double>& tail)
{
    const int n = static_cast<int>(hop.success.size());
    const double s = hop.success.front();
    const double f = hop.failure.front();
    CompensatedSum sum;
    for (int k = 1; k <= n; ++k)
        sum += binomial(n, k) * std::pow(s, k) * std::pow(f, n - k) * tail[static_cast<std::size_t>(k)];
    return sum.value();
}

using TailFn = std::function<double(int k)>;

OutageBreakdown relay_outage(const SystemParams& p, SubsetEvaluation mode, const TailFn& tail_h0,
                             const TailFn& tail_h1)
{
    p.validate();
    const Posterior post = posterior(p);
    const double delta = snr_threshold(p).delta;
    OutageBreakdown out;
    if (delta == 0.0)
        return out;

    bool grouped = false;
    switch (mode) {
    case SubsetEvaluation::Automatic:
        grouped = p.variances.homogeneous();
        break;
    case SubsetEvaluation::Grouped:
        if (!p.variances.homogeneous())
            throw ConfigError("grouped evaluation requires identical per-relay variances");
        grouped = true;
        break;
    case SubsetEvaluation::Enumerate:
        break;
    }

    const auto n = static_cast<std::size_t>(p.n_relays);
    std::vector<double> t0(n + 1, 0.0), t1(n + 1, 0.0);
    for (int k = 1; k <= p.n_relays; ++k) {
        t0[static_cast<std::size_t>(k)] = tail_h0(k);
        t1[static_cast<std::size_t>(k)] = tail_h1(k);
    }

    const FirstHop hop0 = first_hop(p, delta, Hypothesis::H0);
    const FirstHop hop1 = first_hop(p, delta, Hypothesis::H1);
    const auto nonempty = grouped ? grouped_nonempty : enumerate_nonempty;

    out.empty_h0 = post.pi0 * all_fail(hop0);
    out.empty_h1 = post.pi1 * all_fail(hop1);
    out.nonempty_h0 = post.pi0 * clamp01(nonempty(hop0, t0));
    out.nonempty_h1 = post.pi1 * clamp01(nonempty(hop1, t1));

    CompensatedSum total;
    total += out.empty_h0;
    total += out.empty_h1;
    total += out.nonempty_h0;
    total += out.nonempty_h1;
    out.total = clamp01(total.value());
    return out;
}

}  // namespace

double p_below_h0(double delta, double sigma2)
{
    check_delta(delta);
    check_positive(sigma2, "sigma2");
    return -std::expm1(-delta / sigma2);
}

double p_below_h1(double delta, double sigma2_s, double sigma2_p, double gamma_p)
{
    check_delta(delta);
    check_positive(sigma2_s, "sigma2_s");
    check_positive(sigma2_p, "sigma2_p");
    check_positive(gamma_p, "gamma_p");
    // 1 - e^{-a}/(1+b) rewritten as (b + (1 - e^{-a}))/(1+b).
    const double a = delta / sigma2_s;
    const double b = sigma2_p * gamma_p * delta / sigma2_s;
    return clamp01((b - std::expm1(-a)) / (1.0 + b));
}

double p_sum_below_h0(double delta, double sigma2_d, int k)
{
    check_delta(delta);
    check_positive(sigma2_d, "sigma2_d");
    check_shape(k);
    return specfun::reg_lower_gamma(k, delta / sigma2_d);
}

double p_sum_below_h1(double delta, double sigma2_d, double sigma2_pd, double gamma_p, int k)
{
    check_delta(delta);
    check_positive(sigma2_d, "sigma2_d");
    check_positive(sigma2_pd, "sigma2_pd");
    check_positive(gamma_p, "gamma_p");
    check_shape(k);
    if (delta == 0.0)
        return 0.0;

    // P(k, a) + e^{c} [1 - P(k, a + c)] / (1 + beta)^k, beta = c / a.
    const double a = delta / sigma2_d;
    const double c = 1.0 / (sigma2_pd * gamma_p);
    const double beta = sigma2_d / (sigma2_pd * gamma_p * delta);
    const double tail = specfun::scaled_upper_gamma_term(k, a, c);
    double correction = tail / std::pow(1.0 + beta, k);
    if (!std::isfinite(correction))
        correction = std::exp(std::log(tail) - k * std::log1p(beta));
    return clamp01(specfun::reg_lower_gamma(k, a) + correction);
}

double p_max_below_h0(double delta, double sigma2_d, int k)
{
    check_delta(delta);
    check_positive(sigma2_d, "sigma2_d");
    check_shape(k);
    return std::pow(-std::expm1(-delta / sigma2_d), k);
}

double p_max_below_h1(double delta, double sigma2_d, double sigma2_pd, double gamma_p, int k)
{
    check_delta(delta);
    check_positive(sigma2_d, "sigma2_d");
    check_positive(sigma2_pd, "sigma2_pd");
    check_positive(gamma_p, "gamma_p");
    check_shape(k);
    if (delta == 0.0)
        return 0.0;

    // E[(1 - q z)^k] over z = e^{-bY'}, Y' ~ Exp(1), q = e^{-a}, which is
    // (1/b) int_0^1 z^{1/b - 1} (1 - q z)^k dz. Splitting 1 - q z into
    // (1 - q) + q (1 - z) leaves Beta integrals and only nonnegative terms:
    //   sum_j C(k,j) (1-q)^{k-j} q^j prod_{i=1..j} i / (1/b + i).
    const double a = delta / sigma2_d;
    const double b = sigma2_pd * gamma_p * delta / sigma2_d;
    const double q = std::exp(-a);
    const double fail = -std::expm1(-a);
    const double c = 1.0 / b;
    CompensatedSum sum;
    double beta_ratio = 1.0;
    double binom = 1.0;
    for (int j = 0; j <= k; ++j) {
        if (j > 0) {
            beta_ratio *= j / (c + j);
            binom = binom * (k - j + 1) / j;
        }
        sum += binom * std::pow(fail, k - j) * std::pow(q, j) * beta_ratio;
    }
    return clamp01(sum.value());
}

OutageBreakdown outage_multi_relay(const SystemParams& params, SubsetEvaluation mode)
{
    params.validate();
    const double delta = snr_threshold(params.rate, params.gamma_s).delta;
    const auto& v = params.variances;
    return relay_outage(
        params, mode, [&](int k) { return p_sum_below_h0(delta, v.sigma2_d, k); },
        [&](int k) { return p_sum_below_h1(delta, v.sigma2_d, v.sigma2_pd, params.gamma_p, k); });
}

OutageBreakdown outage_best_relay(const SystemParams& params, SubsetEvaluation mode)
{
    params.validate();
    const double delta = snr_threshold(params.rate, params.gamma_s).delta;
    const auto& v = params.variances;
    return relay_outage(
        params, mode, [&](int k) { return p_max_below_h0(delta, v.sigma2_d, k); },
        [&](int k) { return p_max_below_h1(delta, v.sigma2_d, v.sigma2_pd, params.gamma_p, k); });
}

OutageBreakdown outage_direct(const SystemParams& params)
{
    params.validate();
    const Posterior post = posterior(params);
    const double delta = snr_threshold(params).delta_direct;
    const auto& v = params.variances;
    OutageBreakdown out;
    out.nonempty_h0 = post.pi0 * p_below_h0(delta, v.sigma2_sd);
    out.nonempty_h1 = post.pi1 * p_below_h1(delta, v.sigma2_sd, v.sigma2_pd, params.gamma_p);
    out.total = clamp01(out.nonempty_h0 + out.nonempty_h1);
    return out;
}

std::vector<double> decoding_set_size_distribution(const SystemParams& params)
{
    params.validate();
    const Posterior post = posterior(params);
    const double delta = snr_threshold(params).delta;
    const auto n = static_cast<std::size_t>(params.n_relays);

    // Poisson-binomial recursion over relays, one hypothesis at a time.
    auto sizes = [&](const FirstHop& hop) {
        std::vector<double> dist(n + 1, 0.0);
        dist[0] = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = i + 1; k > 0; --k)
                dist[k] = dist[k] * hop.failure[i] + dist[k - 1] * hop.success[i];
            dist[0] *= hop.failure[i];
        }
        return dist;
    };
    const auto d0 = sizes(first_hop(params, delta, Hypothesis::H0));
    const auto d1 = sizes(first_hop(params, delta, Hypothesis::H1));
    std::vector<double> out(n + 1);
    for (std::size_t k = 0; k <= n; ++k)
        out[k] = post.pi0 * d0[k] + post.pi1 * d1[k];
    return out;
}

}  // namespace crn::analytic
