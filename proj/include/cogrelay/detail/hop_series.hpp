// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "cogrelay/analytic.hpp"
#include "cogrelay/model.hpp"
#include "cogrelay/series.hpp"

// Internal surface shared by the exact and asymptotic hop-CDF series
// evaluators.

namespace cogrelay::detail {

struct HopEnv {
  double a = 0.0;  // n_eff * gamma / ((1 - kappa_t^2 gamma) * mean_gain)
  double p_max = 1.0;
  double w = 1.0;
  double ybar = 1.0;
  int t_p = 1;
};

HopEnv make_hop_env(double gamma, const HopConfig& hop, int t_p, double p_max);

// Evaluates the hop CDF series; with `floor_only` the p_max-independent
// interference-limited floor is computed instead.  Escalates from
// compensated double to double-double summation; throws
// NumericalQualityError past the extended-precision guard limit.
analytic::HopCdfResult eval_hop_series_escalating(const SeriesTermList& list,
                                                  const HopEnv& env,
                                                  bool floor_only);

}  // namespace cogrelay::detail
