#pragma once

// Incomplete gamma evaluation restricted to integer shape. Every shape used by
// the outage formulas is the size of a relay decoding set, so the finite
// Poisson sum is exact and no general special-function machinery is needed.

namespace crn::specfun {

/// Regularized lower incomplete gamma P(k, x), i.e. the CDF at x of a sum of k
/// unit-mean exponentials. Throws std::domain_error if k < 1 or x < 0.
double reg_lower_gamma(int k, double x);

/// Returns e^{c} * [1 - P(k, a + c)] in the pre-cancelled form
///
///     e^{-a} * sum_{m=0}^{k-1} (a + c)^m / m!
///
/// which stays finite when e^{c} alone would overflow.
/// Throws std::domain_error if k < 1, a < 0 or c <= 0.
double scaled_upper_gamma_term(int k, double a, double c);

}  // namespace crn::specfun
