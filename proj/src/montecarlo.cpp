#include "crn/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace crn::mc {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double interference_denominator(Hypothesis hyp, double gamma_p, double g_p)
{
    return interference_indicator(hyp) * gamma_p * g_p + 1.0;
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t counter) noexcept
    : state_(mix64(mix64(seed + kGolden) ^ counter))
{
}

std::uint64_t RandomStream::next_u64() noexcept
{
    state_ += kGolden;
    return mix64(state_);
}

double exponential_from_uniform(double u, double mean) { return -mean * std::log1p(-u); }

double sample_exponential(RandomStream& stream, double mean)
{
    return exponential_from_uniform(stream.uniform(), mean);
}

Hypothesis sample_hypothesis(RandomStream& stream, const Posterior& post)
{
    return stream.uniform() < post.pi1 ? Hypothesis::H1 : Hypothesis::H0;
}

ChannelState sample_channel(RandomStream& stream, const SystemParams& params)
{
    const auto n = static_cast<std::size_t>(params.n_relays);
    const auto& v = params.variances;
    ChannelState s;
    s.g_si.resize(n);
    s.g_pi.resize(n);
    s.g_id.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        s.g_si[i] = sample_exponential(stream, v.sigma2_si[i]);
        s.g_pi[i] = sample_exponential(stream, v.sigma2_pi[i]);
        s.g_id[i] = sample_exponential(stream, v.sigma2_d);
    }
    s.g_pd = sample_exponential(stream, v.sigma2_pd);
    s.g_sd = sample_exponential(stream, v.sigma2_sd);
    return s;
}

DecodingSet decoding_set(const ChannelState& state, Hypothesis hyp, const SnrThreshold& thr,
                         const SystemParams& params)
{
    DecodingSet set;
    for (std::size_t i = 0; i < state.g_si.size(); ++i) {
        if (state.g_si[i] > thr.delta * interference_denominator(hyp, params.gamma_p, state.g_pi[i]))
            set.mask |= std::uint32_t{1} << i;
    }
    return set;
}

MrcResult mrc_combine(const ChannelState& state, DecodingSet set, Hypothesis hyp,
                      const SystemParams& params)
{
    if (set.empty())
        throw std::invalid_argument("mrc_combine: empty decoding set");
    MrcResult r;
    double gain = 0.0;
    for (std::size_t i = 0; i < state.g_id.size(); ++i) {
        if (!set.contains(static_cast<int>(i)))
            continue;
        r.weights.push_back(std::sqrt(state.g_id[i]));
        gain += state.g_id[i];
    }
    const double norm = std::sqrt(gain);
    if (norm > 0.0) {
        for (double& w : r.weights)
            w /= norm;
    } else {
        // Every gain is zero: any unit vector is optimal.
        std::fill(r.weights.begin(), r.weights.end(), 1.0 / std::sqrt(double(r.weights.size())));
    }
    r.sinr = params.gamma_s * gain / interference_denominator(hyp, params.gamma_p, state.g_pd);
    return r;
}

double beamformed_sinr(const ChannelState& state, DecodingSet set, Hypothesis hyp,
                       const SystemParams& params, const std::vector<double>& weights)
{
    double amplitude = 0.0;
    std::size_t j = 0;
    for (std::size_t i = 0; i < state.g_id.size(); ++i) {
        if (!set.contains(static_cast<int>(i)))
            continue;
        if (j >= weights.size())
            throw std::invalid_argument("beamformed_sinr: weight vector too short");
        amplitude += weights[j++] * std::sqrt(state.g_id[i]);
    }
    if (j != weights.size())
        throw std::invalid_argument("beamformed_sinr: weight vector too long");
    return params.gamma_s * amplitude * amplitude /
           interference_denominator(hyp, params.gamma_p, state.g_pd);
}

Trial draw_trial(RandomStream& stream, const SystemParams& params, const Posterior& post)
{
    Trial t;
    t.hyp = sample_hypothesis(stream, post);
    t.state = sample_channel(stream, params);
    return t;
}

bool is_outage(const Trial& trial, const SystemParams& params, const SnrThreshold& thr,
               Scheme scheme)
{
    const ChannelState& s = trial.state;
    if (scheme == Scheme::Direct) {
        const double sinr =
            params.gamma_s * s.g_sd / interference_denominator(trial.hyp, params.gamma_p, s.g_pd);
        return std::log2(1.0 + sinr) < params.rate;
    }

    const DecodingSet set = decoding_set(s, trial.hyp, thr, params);
    if (set.empty())
        return true;

    double gain = 0.0;
    for (std::size_t i = 0; i < s.g_id.size(); ++i) {
        if (!set.contains(static_cast<int>(i)))
            continue;
        gain = scheme == Scheme::MultiRelay ? gain + s.g_id[i] : std::max(gain, s.g_id[i]);
    }
    const double sinr =
        params.gamma_s * gain / interference_denominator(trial.hyp, params.gamma_p, s.g_pd);
    return 0.5 * std::log2(1.0 + sinr) < params.rate;
}

bool trial_outage(RandomStream& stream, const SystemParams& params, Scheme scheme)
{
    const Trial t = draw_trial(stream, params, posterior(params));
    return is_outage(t, params, snr_threshold(params), scheme);
}

OutageEstimate estimate_outage(const SystemParams& params, Scheme scheme, std::uint64_t trials,
                               std::uint64_t seed, unsigned workers)
{
    if (trials == 0)
        throw std::invalid_argument("estimate_outage: trials must be >= 1");
    params.validate();
    const Posterior post = posterior(params);
    const SnrThreshold thr = snr_threshold(params);

    auto count_range = [&](std::uint64_t begin, std::uint64_t end) {
        std::uint64_t outages = 0;
        for (std::uint64_t t = begin; t < end; ++t) {
            RandomStream stream(seed, t);
            outages += is_outage(draw_trial(stream, params, post), params, thr, scheme);
        }
        return outages;
    };

    workers = std::max(1u, workers);
    const std::uint64_t n_chunks = std::min<std::uint64_t>(workers, trials);
    std::vector<std::uint64_t> counts(n_chunks, 0);
    if (n_chunks == 1) {
        counts[0] = count_range(0, trials);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_chunks);
        for (std::uint64_t c = 0; c < n_chunks; ++c) {
            const std::uint64_t begin = trials * c / n_chunks;
            const std::uint64_t end = trials * (c + 1) / n_chunks;
            pool.emplace_back([&, c, begin, end] { counts[c] = count_range(begin, end); });
        }
    }

    std::uint64_t outages = 0;
    for (std::uint64_t c : counts)
        outages += c;

    OutageEstimate est;
    est.trials = trials;
    est.seed = seed;
    est.p_hat = static_cast<double>(outages) / static_cast<double>(trials);
    est.std_error = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(trials));
    return est;
}

}  // namespace crn::mc
