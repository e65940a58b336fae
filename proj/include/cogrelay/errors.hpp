// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cogrelay {

// Alternating-series evaluation lost too many digits to cancellation even in
// extended precision.  `estimate` is the best value obtained, `guard` the
// ratio (sum of |terms|) / |sum of terms| that triggered the failure.
// Callers are expected to fall back to the quadrature path.
class NumericalQualityError : public std::runtime_error {
 public:
  NumericalQualityError(const std::string& what, double estimate, double guard)
      : std::runtime_error(what), estimate_(estimate), guard_(guard) {}
  double estimate() const { return estimate_; }
  double guard() const { return guard_; }

 private:
  double estimate_;
  double guard_;
};

// Adaptive quadrature exhausted its panel budget before reaching the
// requested tolerance.
class QuadratureAccuracyError : public std::runtime_error {
 public:
  QuadratureAccuracyError(const std::string& what, double estimate,
                          double achieved_tol)
      : std::runtime_error(what), estimate_(estimate),
        achieved_tol_(achieved_tol) {}
  double estimate() const { return estimate_; }
  double achieved_tolerance() const { return achieved_tol_; }

 private:
  double estimate_;
  double achieved_tol_;
};

// Requested antenna configuration exceeds the configured series-size cap.
class SeriesCapError : public std::length_error {
 public:
  SeriesCapError(const std::string& what, std::size_t requested,
                 std::size_t cap)
      : std::length_error(what), requested_(requested), cap_(cap) {}
  std::size_t requested() const { return requested_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t requested_;
  std::size_t cap_;
};

}  // namespace cogrelay
