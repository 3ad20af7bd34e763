#pragma once

#include "crn/analytic.hpp"
#include "crn/model.hpp"

#include <cstdint>
#include <vector>

namespace crn::mc {

using analytic::DecodingSet;

/// Counter-based random stream. Every (seed, counter) pair names an
/// independent SplitMix64 sequence, so trial t draws the same numbers no
/// matter which worker runs it or in what order.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t counter) noexcept;

    std::uint64_t next_u64() noexcept;

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

/// Inverse-CDF exponential draw -mean * ln(1 - u) for u in [0, 1).
double exponential_from_uniform(double u, double mean);

double sample_exponential(RandomStream& stream, double mean);

/// True hypothesis given that a hole was declared: H1 with probability pi1.
Hypothesis sample_hypothesis(RandomStream& stream, const Posterior& post);

/// Squared fading magnitudes for one channel realization.
struct ChannelState {
    std::vector<double> g_si;
    std::vector<double> g_pi;
    std::vector<double> g_id;
    double g_pd = 0.0;
    double g_sd = 0.0;
};

/// Draws every link gain; the draw order is fixed and scheme independent.
ChannelState sample_channel(RandomStream& stream, const SystemParams& params);

/// Relays whose first-hop capacity exceeds the rate:
/// g_si > delta * (alpha * gamma_p * g_pi + 1).
DecodingSet decoding_set(const ChannelState& state, Hypothesis hyp, const SnrThreshold& thr,
                         const SystemParams& params);

struct MrcResult {
    std::vector<double> weights;  // unit norm, one per relay in the set, in relay order
    double sinr = 0.0;
};

/// Maximal ratio combining over the decoding set. Weights are the phase-aligned
/// amplitudes sqrt(g_id) normalized to unit norm. Throws std::invalid_argument
/// for an empty set.
MrcResult mrc_combine(const ChannelState& state, DecodingSet set, Hypothesis hyp,
                      const SystemParams& params);

/// SINR at SD for arbitrary real beamforming weights over the set (phase
/// aligned). Used to check MRC optimality.
double beamformed_sinr(const ChannelState& state, DecodingSet set, Hypothesis hyp,
                       const SystemParams& params, const std::vector<double>& weights);

enum class Scheme { Direct, BestRelay, MultiRelay };

/// One sensing-conditioned realization: the true hypothesis and all gains.
struct Trial {
    Hypothesis hyp = Hypothesis::H0;
    ChannelState state;
};

Trial draw_trial(RandomStream& stream, const SystemParams& params, const Posterior& post);

/// Outage of `scheme` on an already drawn trial.
bool is_outage(const Trial& trial, const SystemParams& params, const SnrThreshold& thr,
               Scheme scheme);

/// Draws one trial from `stream` and reports whether `scheme` is in outage.
bool trial_outage(RandomStream& stream, const SystemParams& params, Scheme scheme);

struct OutageEstimate {
    double p_hat = 0.0;
    double std_error = 0.0;  // sqrt(p_hat (1 - p_hat) / trials)
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
};

/// Monte Carlo outage estimate. Trial t uses RandomStream(seed, t); the
/// result is identical for every worker count.
OutageEstimate estimate_outage(const SystemParams& params, Scheme scheme, std::uint64_t trials,
                               std::uint64_t seed, unsigned workers = 1);

}  // namespace crn::mc
