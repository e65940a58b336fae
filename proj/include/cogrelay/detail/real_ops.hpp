// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

#include "cogrelay/double_double.hpp"

// Arithmetic adapters letting the series evaluators run on either plain
// double or DoubleDouble.

namespace cogrelay::detail {

inline double real_exp(double x) { return std::exp(x); }
inline DoubleDouble real_exp(const DoubleDouble& x) { return dd_exp(x); }

inline double real_abs(double x) { return std::fabs(x); }
inline DoubleDouble real_abs(const DoubleDouble& x) { return dd_abs(x); }

inline double real_powi(double base, long long n) {
  double r = 1.0;
  while (n > 0) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  return r;
}
inline DoubleDouble real_powi(const DoubleDouble& base, long long n) {
  return dd_powi(base, n);
}

inline double to_dbl(double x) { return x; }
inline double to_dbl(const DoubleDouble& x) { return x.to_double(); }

// Compensated (Neumaier) accumulator for the double path; the
// DoubleDouble path simply sums natively.
template <class Real>
struct Accumulator;

template <>
struct Accumulator<double> {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double total() const { return sum + comp; }
};

template <>
struct Accumulator<DoubleDouble> {
  DoubleDouble sum;
  void add(const DoubleDouble& x) { sum += x; }
  DoubleDouble total() const { return sum; }
};

// Regularized upper incomplete gamma of integer order via the finite
// exponential sum, Q(n,x) = e^{-x} sum_{t<n} x^t/t!.  Positive terms
// only, folded to avoid overflow.
template <class Real>
Real erlang_upper_reg(int n, const Real& x) {
  Real term = real_exp(-x);
  Real s = term;
  for (int t = 1; t < n; ++t) {
    term = term * x / Real(static_cast<double>(t));
    s = s + term;
  }
  return s;
}

template <class Real>
inline constexpr double series_eps = 1e-18;
template <>
inline constexpr double series_eps<DoubleDouble> = 1e-35;

// Regularized lower incomplete gamma of integer order, relative-accurate
// for small results (ascending Poisson-tail series below n+1).
template <class Real>
Real erlang_lower_reg(int n, const Real& x) {
  if (to_dbl(x) <= 0.0) return Real(0.0);
  if (to_dbl(x) < n + 1.0) {
    Real start = real_exp(-x);
    for (int j = 1; j <= n; ++j) start = start * x / Real(static_cast<double>(j));
    if (to_dbl(start) == 0.0) return Real(0.0);
    Real sum(1.0);
    Real term(1.0);
    for (int t = n + 1; t < n + 100000; ++t) {
      term = term * x / Real(static_cast<double>(t));
      sum = sum + term;
      if (to_dbl(term) < to_dbl(sum) * series_eps<Real>) break;
    }
    return start * sum;
  }
  return Real(1.0) - erlang_upper_reg(n, x);
}

}  // namespace cogrelay::detail
