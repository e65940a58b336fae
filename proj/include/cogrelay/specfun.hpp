// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace cogrelay::specfun {

// ln Gamma(a) for a > 0 (Lanczos approximation, relative error ~1e-14).
// Throws std::domain_error for a <= 0.
double ln_gamma(double a);

// Regularized lower incomplete gamma P(a, x) = gamma_L(a,x) / Gamma(a).
// Power series for x < a+1, continued fraction otherwise.  The series
// branch is relative-accurate even for tiny results.
double reg_lower_gamma(double a, double x);

// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), evaluated by
// the route that is accurate in its own regime (continued fraction for
// x >= a+1, complement of the series otherwise).
double reg_upper_gamma(double a, double x);

// P(n, x) for positive integer n via the finite elementary-function form:
// ascending Poisson-tail series below n+1 (relative-accurate), complement
// of the truncated exponential sum above.  Independent evaluation route
// from reg_lower_gamma; the two agree to 1e-12 absolute for n <= 64.
double erlang_cdf(int n, double x);

}  // namespace cogrelay::specfun
