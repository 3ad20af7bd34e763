#include "crn/model.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace crn;

TEST_CASE("posterior examples")
{
    const Posterior p = posterior(0.8, 0.9, 0.1);
    CHECK(p.pi0 == doctest::Approx(72.0 / 74.0).epsilon(1e-15));
    CHECK(p.pi1 == doctest::Approx(2.0 / 74.0).epsilon(1e-14));

    for (double p0 : {0.1, 0.5, 0.8, 0.99}) {
        const Posterior perfect = posterior(p0, 1.0, 0.0);
        CHECK(perfect.pi0 == 1.0);
        CHECK(perfect.pi1 == 0.0);
    }
    for (double q : {0.05, 0.35, 1.0}) {
        const Posterior sym = posterior(0.5, q, q);
        CHECK(sym.pi0 == doctest::Approx(0.5));
        CHECK(sym.pi1 == doctest::Approx(0.5));
    }
}

TEST_CASE("posterior rejects sensing that never declares a hole")
{
    CHECK_THROWS_AS(posterior(0.8, 0.0, 0.0), ConfigError);
    CHECK_THROWS_AS(posterior(1.0, 0.0, 0.7), ConfigError);
}

TEST_CASE("posterior sums to one and is monotone in sensing quality")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    for (int i = 0; i < 500; ++i) {
        const double p0 = u(rng), pd = u(rng), pf = u(rng);
        const Posterior p = posterior(p0, pd, pf);
        CHECK(std::fabs(p.pi0 + p.pi1 - 1.0) < 1e-12);
        CHECK(posterior(p0, std::min(1.0, pd + 0.01), pf).pi0 >= p.pi0);
        CHECK(posterior(p0, pd, std::min(1.0, pf + 0.01)).pi0 <= p.pi0);
    }
}

TEST_CASE("snr_threshold")
{
    CHECK(snr_threshold(1.0, 1.0).delta == 3.0);
    CHECK(snr_threshold(1.0, 10.0).delta == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(snr_threshold(1.0, 10.0).delta_direct == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(snr_threshold(1e-9, 1.0).delta == doctest::Approx(2e-9 * std::log(2.0)).epsilon(1e-8));

    CHECK_THROWS_AS(snr_threshold(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(snr_threshold(1.0, -1.0), std::domain_error);

    for (double r : {0.1, 0.5, 1.0, 2.0})
        for (double g : {0.5, 1.0, 10.0, 1000.0}) {
            const auto t = snr_threshold(r, g);
            CHECK(t.delta > 0.0);
            CHECK(t.delta_direct > 0.0);
            CHECK(snr_threshold(r, g * 1.01).delta < t.delta);
            CHECK(snr_threshold(r, g * 1.01).delta_direct < t.delta_direct);
            CHECK(snr_threshold(r * 1.01, g).delta > t.delta);
            CHECK(snr_threshold(r * 1.01, g).delta_direct > t.delta_direct);
        }
}

TEST_CASE("dB conversions")
{
    CHECK(db_to_linear(10.0) == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(db_to_linear(0.0) == 1.0);
    CHECK(db_to_linear(27.0) == doctest::Approx(501.187233627272285).epsilon(1e-14));
    for (double x = 1e-6; x <= 1e6; x *= 1.37)
        CHECK(std::fabs(db_to_linear(linear_to_db(x)) - x) <= 1e-12 * x);
}

TEST_CASE("SystemParams validation")
{
    SystemParams p = reference_params(6, 10.0, 0.9, 0.1);
    CHECK_NOTHROW(p.validate());

    auto rejects = [](SystemParams q, const char* needle) {
        try {
            q.validate();
        } catch (const ConfigError& e) {
            return std::string(e.what()).find(needle) != std::string::npos;
        }
        return false;
    };

    SystemParams q = p;
    q.pf = 1.3;
    CHECK(rejects(q, "pf"));
    q = p;
    q.p0 = -0.1;
    CHECK(rejects(q, "p0"));
    q = p;
    q.pd = 0.0;
    q.pf = 0.0;
    CHECK(rejects(q, "never declares"));
    q = p;
    q.gamma_s = 0.0;
    CHECK(rejects(q, "gamma_s"));
    q = p;
    q.rate = -1.0;
    CHECK(rejects(q, "rate"));
    q = p;
    q.n_relays = 0;
    CHECK(rejects(q, "n_relays"));
    q = reference_params(25, 10.0, 0.9, 0.1);
    CHECK(rejects(q, "cap"));
    q = p;
    q.variances.sigma2_si.pop_back();
    CHECK(rejects(q, "sigma2_si"));
    q = p;
    q.variances.sigma2_pi[2] = 0.0;
    CHECK(rejects(q, "sigma2_pi[2]"));
    q = p;
    q.variances.sigma2_pd = -1.0;
    CHECK(rejects(q, "sigma2_pd"));
}

TEST_CASE("hypothesis to interference indicator")
{
    static_assert(interference_indicator(Hypothesis::H0) == 0.0);
    static_assert(interference_indicator(Hypothesis::H1) == 1.0);
}

TEST_CASE("homogeneity detection")
{
    auto v = ChannelVariances::uniform(4, 1.0, 0.2, 1.0, 0.2, 1.0);
    CHECK(v.homogeneous());
    v.sigma2_si[3] = 2.0;
    CHECK_FALSE(v.homogeneous());
}
