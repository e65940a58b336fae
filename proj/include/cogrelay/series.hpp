// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "cogrelay/model.hpp"

namespace cogrelay {

// One signed term of the combined-gain CDF expansion
//   F_X(z) = sum_terms weight * (z/xbar)^phi * exp(-k z/xbar).
// For TAS/MRC the term carries the nested indices p_1 >= ... >= p_{n-1}
// (p_1 <= k) and phi = sum_q p_q; for TAS/SC p is empty and phi = 0.
// `weight_lo` is the extended-precision tail of the coefficient, used by
// the double-double evaluation path.
struct SeriesTerm {
  int k = 0;
  std::vector<int> p;
  int phi = 0;
  double weight = 0.0;
  double weight_lo = 0.0;
};

struct SeriesTermList {
  int m = 1;
  int n = 1;
  DiversityScheme scheme = DiversityScheme::TAS_MRC;
  std::vector<SeriesTerm> terms;  // sorted by k ascending
};

// Precision route taken by a series evaluation.
enum class EvalMode { Double, DoubleDouble };

struct SeriesEvalResult {
  double value = 0.0;
  double guard = 1.0;  // (sum |term|) / |sum term|
  EvalMode mode = EvalMode::Double;
};

// Builds the term list for an (m, n, scheme) hop.  Lists with
// m*n <= kSelfCheckLimit are verified against the direct powered-Erlang
// CDF at 64 probe points (1e-9 relative) before being returned.  Throws
// SeriesCapError when m*n exceeds the cap.
SeriesTermList build_series_terms(int m, int n, DiversityScheme scheme);

// Cached, immutable, shareable variant of build_series_terms.
const SeriesTermList& series_terms(int m, int n, DiversityScheme scheme);

// Largest m*n accepted (covers the 8x8 configurations).
constexpr int kSeriesCap = 64;
// Largest m*n whose term list is self-checked at construction.
constexpr int kSelfCheckLimit = 16;

// Evaluates the term-list reconstruction of F_X(z) with automatic
// escalation from compensated double to double-double summation; throws
// NumericalQualityError when even extended precision cannot absorb the
// cancellation.
SeriesEvalResult series_gain_cdf(const SeriesTermList& list, double z,
                                 double mean_gain);

// Test fixture: multiplies every term weight by (1 + rel_epsilon) in all
// lists built afterwards, bypassing the construction self-check.  Used as
// a negative control by the validation tooling; 0 restores normal
// behaviour.  Clears the term cache.
void set_series_corruption(double rel_epsilon);
double series_corruption();

}  // namespace cogrelay
