// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "cogrelay/model.hpp"

namespace cogrelay::mc {

// xoshiro256++ seeded through SplitMix64.  Deterministic across
// platforms; uniform doubles are formed from the top 53 bits explicitly
// so no standard-library distribution variability leaks in.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next_u64();
  // Uniform draw in (0, 1]; zero is excluded so -log(u) is always finite.
  double next_uniform();

 private:
  std::uint64_t s_[4];
};

// Inverse-CDF exponential draw with the given mean.
double sample_exponential(Rng& rng, double mean);

// Aggregate interference gain toward the primary receiver: sum of t_p
// independent exponential gains (Gamma(t_p, mean) distributed).
double sample_interference_gain(int t_p, double mean, Rng& rng);

// Post-combining desired-signal gain: best transmit antenna of m, with
// MRC summing or SC selecting over n receive branches.  Consumes exactly
// m*n exponential draws in a fixed order.
double sample_hop_gain(int m, int n, double mean_gain, DiversityScheme scheme,
                       Rng& rng);

// SNDR given realized gains: p = min(p_max, w/h), then
// p x / (p kappa_t^2 x + n_eff).
double sndr_from_gains(double x_gain, double h_gain, const HopConfig& hop,
                       double p_max);

// One SNDR draw for a hop.
double hop_sndr_sample(const HopConfig& hop, int t_p, double p_max,
                       DiversityScheme scheme, Rng& rng);

struct OutageEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;  // binomial standard error
  long long trials = 0;
  std::uint64_t seed = 0;
  long long outage_count = 0;
};

// Monte-Carlo outage estimate over `trials` independent channel draws.
// Trials are partitioned into fixed-size blocks, each with its own
// counter-derived stream, and block counts are merged in index order, so
// the result is bit-identical for any worker count.
OutageEstimate estimate_outage(const SystemConfig& cfg, long long trials,
                               std::uint64_t seed, int workers = 1);

}  // namespace cogrelay::mc
