#include "crn/specfun.hpp"

#include "crn/summation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace crn::specfun {

namespace {

void check_shape(int k)
{
    if (k < 1)
        throw std::domain_error("incomplete gamma: shape must be >= 1, got " + std::to_string(k));
}

// log(e^{-x} x^m / m!) for x > 0.
double log_poisson_term(int m, double x)
{
    return m * std::log(x) - x - std::lgamma(m + 1.0);
}

// e^{-x} sum_{m<k} x^m/m!, the Poisson CDF at k-1 (= 1 - P(k,x)).
double poisson_head(int k, double x)
{
    CompensatedSum sum;
    if (x < 700.0) {
        double term = std::exp(-x);
        for (int m = 0; m < k; ++m) {
            sum += term;
            term *= x / (m + 1);
        }
    } else {
        for (int m = 0; m < k; ++m)
            sum += std::exp(log_poisson_term(m, x));
    }
    return sum.value();
}

// e^{-x} sum_{m>=k} x^m/m!, used below the mean where 1 - poisson_head would
// lose all relative precision.
double poisson_tail(int k, double x)
{
    double term = std::exp(log_poisson_term(k, x));
    CompensatedSum sum;
    for (int m = k; term > 0.0; ++m) {
        sum += term;
        if (term < 1e-18 * sum.value())
            break;
        term *= x / (m + 1);
    }
    return sum.value();
}

}  // namespace

double reg_lower_gamma(int k, double x)
{
    check_shape(k);
    if (!(x >= 0.0))
        throw std::domain_error("incomplete gamma: argument must be >= 0");
    if (x == 0.0)
        return 0.0;
    if (k == 1)
        return -std::expm1(-x);
    if (x < k)
        return std::min(1.0, poisson_tail(k, x));
    return std::max(0.0, 1.0 - poisson_head(k, x));
}

double scaled_upper_gamma_term(int k, double a, double c)
{
    check_shape(k);
    if (!(a >= 0.0))
        throw std::domain_error("scaled upper gamma: a must be >= 0");
    if (!(c > 0.0))
        throw std::domain_error("scaled upper gamma: c must be > 0");

    const double s = a + c;
    const double log_s = std::log(s);
    CompensatedSum sum;
    sum += std::exp(-a);
    for (int m = 1; m < k; ++m)
        sum += std::exp(m * log_s - a - std::lgamma(m + 1.0));
    return sum.value();
}

}  // namespace crn::specfun
