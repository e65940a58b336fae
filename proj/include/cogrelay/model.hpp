// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace cogrelay {

// Diversity strategy of a hop.  Receive-only selection combining is
// TAS_SC with m_tx = 1; a single-antenna hop is either variant with
// m_tx = n_rx = 1.
enum class DiversityScheme { TAS_MRC, TAS_SC };

const char* to_string(DiversityScheme s);
DiversityScheme scheme_from_string(const std::string& s);

// Physical parameters of one transmission hop.  All gains and powers are
// linear (not dB).
struct HopConfig {
  int m_tx = 1;                        // transmit antennas
  int n_rx = 1;                        // receive antennas
  double mean_gain = 1.0;              // average desired-link gain per branch
  double interference_mean_gain = 1.0; // average per-antenna gain toward the primary receiver
  double interference_threshold = 1.0; // tolerable interfering power at the primary receiver
  double kappa_t = 0.0;                // transmitter impairment level, in [0,1)
  double kappa_r = 0.0;                // receiver impairment level, in [0,1)
  double noise_psd = 1.0;              // AWGN power spectral density
};

// Two hops plus shared parameters.  The relay owns hop1.n_rx and
// hop2.m_tx; a mismatch between them is flagged by validate() as a
// warning, not an error.
struct SystemConfig {
  HopConfig hop1;
  HopConfig hop2;
  int primary_antennas = 1;  // antennas at the primary receiver
  double p_max = 1.0;        // maximum transmit power, linear
  DiversityScheme scheme = DiversityScheme::TAS_MRC;
  double gamma_th = 1.0;     // outage threshold, linear
};

// Power-ratio dB conversions.
double db_to_linear(double value_db);
double linear_to_db(double value_linear);

// Effective noise kappa_r^2 * n_rx + noise_psd.
double effective_noise(const HopConfig& hop);

// Hard upper bound 1/kappa_t^2 on the hop SNDR (+inf for ideal hardware).
double sndr_ceiling(const HopConfig& hop);

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  std::vector<std::string> notices;
  bool ok() const { return errors.empty(); }
};

// Checks all type invariants.  Relay antenna mismatch is a warning;
// gamma_th at or above a hop's SNDR ceiling is an outage-certain notice.
ValidationReport validate(const SystemConfig& cfg);

}  // namespace cogrelay
