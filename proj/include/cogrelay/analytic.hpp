// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "cogrelay/model.hpp"
#include "cogrelay/series.hpp"

namespace cogrelay::analytic {

// CDF of the post-combining desired-signal gain, evaluated in the direct
// powered form: [P(n, z/xbar)]^m for TAS/MRC, (1 - e^{-z/xbar})^{n m} for
// TAS/SC.  Relative-accurate even for tiny probabilities.
double gain_cdf_direct(double z, int m, int n, double mean_gain,
                       DiversityScheme scheme);

struct HopCdfResult {
  double value = 0.0;
  double guard = 1.0;
  EvalMode mode = EvalMode::Double;
};

// Closed-form per-hop SNDR CDF (series over incomplete-gamma terms).
// Returns exactly 1 for gamma at or above the SNDR ceiling.  Escalates to
// double-double when the cancellation guard crosses the double limit and
// throws NumericalQualityError when even that is insufficient; callers
// should then use hop_sndr_cdf_quadrature.
HopCdfResult hop_sndr_cdf_detailed(double gamma, const HopConfig& hop, int t_p,
                                   double p_max, DiversityScheme scheme);
double hop_sndr_cdf(double gamma, const HopConfig& hop, int t_p, double p_max,
                    DiversityScheme scheme);

// Ground-truth oracle: direct numerical evaluation of the defining
// integral with the tail mapped to a finite interval.  Adaptive Simpson
// refinement, absolute tolerance 1e-10, then relative refinement for
// small results.  Throws QuadratureAccuracyError if the panel budget is
// exhausted first.
double hop_sndr_cdf_quadrature(double gamma, const HopConfig& hop, int t_p,
                               double p_max, DiversityScheme scheme);

// F1 + F2 - F1*F2.
double combine_hops(double f1, double f2);

// End-to-end outage probability P[min(SNDR_1, SNDR_2) <= gamma_th].
double e2e_outage(double gamma_th, const SystemConfig& cfg);
double e2e_outage_quadrature(double gamma_th, const SystemConfig& cfg);

// Elementary fast path for 1x1 hops with a single-antenna primary
// receiver.  Throws std::invalid_argument on any multi-antenna input.
double single_antenna_outage(double gamma_th, const SystemConfig& cfg);

}  // namespace cogrelay::analytic
