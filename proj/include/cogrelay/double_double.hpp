// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <limits>

namespace cogrelay {

// Double-double arithmetic: a value held as an unevaluated sum of two
// doubles, giving roughly 31 significant decimal digits.  The series
// evaluators switch to it when alternating sums cancel past what plain
// double precision can absorb.  Algorithms follow the classic
// Dekker/Knuth error-free transformations (no FMA required).
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double h) : hi(h) {}  // NOLINT(google-explicit-constructor)
  constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

  double to_double() const { return hi + lo; }
};

namespace dd_detail {

inline double two_sum(double a, double b, double& err) {
  double s = a + b;
  double bb = s - a;
  err = (a - (s - bb)) + (b - bb);
  return s;
}

inline double quick_two_sum(double a, double b, double& err) {
  double s = a + b;
  err = b - (s - a);
  return s;
}

inline void split(double a, double& hi, double& lo) {
  constexpr double splitter = 134217729.0;  // 2^27 + 1
  double t = splitter * a;
  hi = t - (t - a);
  lo = a - hi;
}

inline double two_prod(double a, double b, double& err) {
  double p = a * b;
  double ahi, alo, bhi, blo;
  split(a, ahi, alo);
  split(b, bhi, blo);
  err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo;
  return p;
}

}  // namespace dd_detail

inline DoubleDouble operator+(const DoubleDouble& a, const DoubleDouble& b) {
  using namespace dd_detail;
  double e1, e2;
  double s1 = two_sum(a.hi, b.hi, e1);
  double s2 = two_sum(a.lo, b.lo, e2);
  e1 += s2;
  s1 = quick_two_sum(s1, e1, e1);
  e1 += e2;
  s1 = quick_two_sum(s1, e1, e1);
  return {s1, e1};
}

inline DoubleDouble operator-(const DoubleDouble& a) { return {-a.hi, -a.lo}; }

inline DoubleDouble operator-(const DoubleDouble& a, const DoubleDouble& b) {
  return a + (-b);
}

inline DoubleDouble operator*(const DoubleDouble& a, const DoubleDouble& b) {
  using namespace dd_detail;
  double e;
  double p = two_prod(a.hi, b.hi, e);
  e += a.hi * b.lo + a.lo * b.hi;
  p = quick_two_sum(p, e, e);
  return {p, e};
}

inline DoubleDouble operator/(const DoubleDouble& a, const DoubleDouble& b) {
  using namespace dd_detail;
  double q1 = a.hi / b.hi;
  DoubleDouble r = a - b * DoubleDouble(q1);
  double q2 = r.hi / b.hi;
  r = r - b * DoubleDouble(q2);
  double q3 = r.hi / b.hi;
  double e;
  double s = quick_two_sum(q1, q2, e);
  return DoubleDouble(s, e) + DoubleDouble(q3);
}

inline DoubleDouble& operator+=(DoubleDouble& a, const DoubleDouble& b) {
  a = a + b;
  return a;
}
inline DoubleDouble& operator-=(DoubleDouble& a, const DoubleDouble& b) {
  a = a - b;
  return a;
}
inline DoubleDouble& operator*=(DoubleDouble& a, const DoubleDouble& b) {
  a = a * b;
  return a;
}
inline DoubleDouble& operator/=(DoubleDouble& a, const DoubleDouble& b) {
  a = a / b;
  return a;
}

inline bool operator<(const DoubleDouble& a, const DoubleDouble& b) {
  return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(const DoubleDouble& a, const DoubleDouble& b) {
  return b < a;
}
inline bool operator==(const DoubleDouble& a, const DoubleDouble& b) {
  return a.hi == b.hi && a.lo == b.lo;
}

inline DoubleDouble dd_abs(const DoubleDouble& a) {
  return (a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0)) ? -a : a;
}

inline DoubleDouble dd_ldexp(const DoubleDouble& a, int n) {
  return {std::ldexp(a.hi, n), std::ldexp(a.lo, n)};
}

// exp(x) with ~31 digit accuracy; underflows to 0 below -745 and returns
// +inf above 709, matching the double exponent range.
inline DoubleDouble dd_exp(const DoubleDouble& x) {
  if (x.hi <= -745.0) return DoubleDouble(0.0);
  if (x.hi >= 709.0)
    return DoubleDouble(std::numeric_limits<double>::infinity());
  static const DoubleDouble ln2(6.931471805599452862e-01,
                                2.319046813846299558e-17);
  double m = std::floor(x.hi / ln2.hi + 0.5);
  DoubleDouble r = x - ln2 * DoubleDouble(m);
  r = r * DoubleDouble(1.0 / 512.0);  // 2^-9, exact
  // Taylor series for exp(r) - 1 with |r| <= ln2/1024.
  DoubleDouble term = r;
  DoubleDouble sum = r;
  for (int i = 2; i <= 16; ++i) {
    term = term * r / DoubleDouble(static_cast<double>(i));
    sum += term;
    if (std::fabs(term.hi) < 1e-40) break;
  }
  // Undo the 2^-9 scaling: (1+s)^2 - 1 = s*(s+2), nine times.
  for (int i = 0; i < 9; ++i) sum = sum * (sum + DoubleDouble(2.0));
  DoubleDouble res = sum + DoubleDouble(1.0);
  return dd_ldexp(res, static_cast<int>(m));
}

inline DoubleDouble dd_powi(DoubleDouble base, long long n) {
  DoubleDouble r(1.0);
  while (n > 0) {
    if (n & 1) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

}  // namespace cogrelay
