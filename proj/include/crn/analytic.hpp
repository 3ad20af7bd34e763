#pragma once

#include "crn/model.hpp"

#include <bit>
#include <cstdint>
#include <vector>

namespace crn::analytic {

/// Relays that decoded the first-hop transmission. Bit i set <=> relay R_{i+1}
/// is in the set; mask 0 is the empty set.
struct DecodingSet {
    std::uint32_t mask = 0;

    int cardinality() const noexcept { return std::popcount(mask); }
    bool empty() const noexcept { return mask == 0; }
    bool contains(int relay) const noexcept { return (mask >> relay) & 1u; }
};

/// Outage split by decoding-set emptiness and true hypothesis. Each component
/// already carries its posterior weight, so the four sum to the total.
struct OutageBreakdown {
    double total = 0.0;
    double empty_h0 = 0.0;
    double empty_h1 = 0.0;
    double nonempty_h0 = 0.0;
    double nonempty_h1 = 0.0;
};

// Link-level probabilities. Arguments are linear; delta is a normalized
// gain threshold.

/// Pr(|h|^2 < delta), |h|^2 ~ Exp(sigma2).
double p_below_h0(double delta, double sigma2);

/// Pr(|h_s|^2 < delta * (gamma_p |h_p|^2 + 1)) with independent exponential
/// gains of means sigma2_s and sigma2_p.
double p_below_h1(double delta, double sigma2_s, double sigma2_p, double gamma_p);

/// Pr(sum of k i.i.d. Exp(sigma2_d) gains < delta).
double p_sum_below_h0(double delta, double sigma2_d, int k);

/// Pr(sum of k i.i.d. Exp(sigma2_d) gains < delta * (gamma_p |h_pd|^2 + 1)).
/// Returns 0 at delta == 0.
double p_sum_below_h1(double delta, double sigma2_d, double sigma2_pd, double gamma_p, int k);

/// Pr(max of k i.i.d. Exp(sigma2_d) gains < delta).
double p_max_below_h0(double delta, double sigma2_d, int k);

/// Pr(max of k i.i.d. Exp(sigma2_d) gains < delta * (gamma_p |h_pd|^2 + 1)).
double p_max_below_h1(double delta, double sigma2_d, double sigma2_pd, double gamma_p, int k);

/// How the sum over non-empty decoding sets is evaluated.
enum class SubsetEvaluation {
    Automatic,  // Grouped when relay variances are homogeneous, else Enumerate
    Enumerate,  // every mask 1 .. 2^N - 1
    Grouped,    // by cardinality with binomial weights; requires homogeneous relays
};

/// Closed-form outage of multi-relay selection with MRC at the destination.
OutageBreakdown outage_multi_relay(const SystemParams& params,
                                   SubsetEvaluation mode = SubsetEvaluation::Automatic);

/// Outage when only the strongest relay->SD link in the decoding set forwards.
OutageBreakdown outage_best_relay(const SystemParams& params,
                                  SubsetEvaluation mode = SubsetEvaluation::Automatic);

/// Outage of one-slot ST->SD transmission. Empty-set components are zero.
OutageBreakdown outage_direct(const SystemParams& params);

/// Pr(|D| = k | hole declared) for k = 0..N.
std::vector<double> decoding_set_size_distribution(const SystemParams& params);

}  // namespace crn::analytic
