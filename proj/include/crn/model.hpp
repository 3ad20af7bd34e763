#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace crn {

/// Thrown when a parameter set violates a model invariant. The message names
/// the offending field.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Largest relay count accepted. The closed form sums over all 2^N - 1
/// non-empty decoding sets.
inline constexpr int kMaxRelays = 24;

/// Mean squared fading gains (exponential means under Rayleigh fading).
struct ChannelVariances {
    std::vector<double> sigma2_si;  // ST -> R_i, one per relay
    std::vector<double> sigma2_pi;  // PT -> R_i, one per relay
    double sigma2_d = 1.0;          // R_i -> SD, common to all relays
    double sigma2_pd = 0.2;         // PT -> SD
    double sigma2_sd = 1.0;         // ST -> SD, direct-transmission benchmark only

    /// Same ST->R and PT->R means for every relay.
    static ChannelVariances uniform(int n_relays, double si, double pi, double d, double pd,
                                    double sd);

    bool homogeneous() const;
};

struct SystemParams {
    double p0 = 0.8;       // Pr(spectrum unoccupied)
    double pd = 0.9;       // Pr(declare hole | H0)
    double pf = 0.1;       // Pr(declare hole | H1)
    double gamma_s = 10.0; // linear SNR P_s / N_0
    double gamma_p = 10.0; // linear SNR P_p / N_0
    double rate = 1.0;     // bit/s/Hz
    int n_relays = 6;
    ChannelVariances variances = ChannelVariances::uniform(6, 1.0, 0.2, 1.0, 0.2, 1.0);

    /// Throws ConfigError describing the first violated invariant.
    void validate() const;
};

/// Reference parameter set for the outage-vs-gamma_s sweeps: P_0 = 0.8,
/// gamma_p = 10 dB, R = 1, unit-mean ST->R, R->SD and ST->SD links, mean 0.2
/// on every link from the primary transmitter.
SystemParams reference_params(int n_relays, double gamma_s_db, double pd, double pf);

enum class Hypothesis { H0, H1 };

/// Primary-interference indicator: 0 when the band is free, 1 when occupied.
constexpr double interference_indicator(Hypothesis h) noexcept
{
    return h == Hypothesis::H1 ? 1.0 : 0.0;
}

/// True-state probabilities given that sensing declared a spectrum hole.
struct Posterior {
    double pi0;
    double pi1;
};

/// Bayes posterior of H0/H1 given a detected hole. Throws ConfigError if
/// sensing can never declare a hole (P_0 P_d + (1 - P_0) P_f == 0).
Posterior posterior(double p0, double pd, double pf);

inline Posterior posterior(const SystemParams& p) { return posterior(p.p0, p.pd, p.pf); }

/// Minimum normalized gain needed to support the target rate.
struct SnrThreshold {
    double delta;        // (2^{2R} - 1) / gamma_s, two-slot relayed transmission
    double delta_direct; // (2^R - 1) / gamma_s, one-slot direct transmission
};

/// Throws std::domain_error for nonpositive rate or gamma_s.
SnrThreshold snr_threshold(double rate, double gamma_s);

inline SnrThreshold snr_threshold(const SystemParams& p) { return snr_threshold(p.rate, p.gamma_s); }

double db_to_linear(double x_db);
double linear_to_db(double x);

}  // namespace crn
