// SPDX-License-Identifier: Apache-2.0
#include "cogrelay/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cogrelay {

const char* to_string(DiversityScheme s) {
  return s == DiversityScheme::TAS_MRC ? "TAS_MRC" : "TAS_SC";
}

DiversityScheme scheme_from_string(const std::string& s) {
  if (s == "TAS_MRC") return DiversityScheme::TAS_MRC;
  if (s == "TAS_SC") return DiversityScheme::TAS_SC;
  throw std::invalid_argument("unknown diversity scheme: " + s);
}

double db_to_linear(double value_db) {
  return std::pow(10.0, value_db / 10.0);
}

double linear_to_db(double value_linear) {
  return 10.0 * std::log10(value_linear);
}

double effective_noise(const HopConfig& hop) {
  return hop.kappa_r * hop.kappa_r * hop.n_rx + hop.noise_psd;
}

double sndr_ceiling(const HopConfig& hop) {
  if (hop.kappa_t == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / (hop.kappa_t * hop.kappa_t);
}

namespace {

void check_hop(const HopConfig& hop, const std::string& name,
               ValidationReport& report) {
  auto err = [&](const std::string& msg) {
    report.errors.push_back(name + ": " + msg);
  };
  if (hop.m_tx < 1) err("m_tx must be >= 1");
  if (hop.n_rx < 1) err("n_rx must be >= 1");
  if (!(hop.mean_gain > 0.0)) err("mean_gain must be > 0");
  if (!(hop.interference_mean_gain > 0.0))
    err("interference_mean_gain must be > 0");
  if (!(hop.interference_threshold > 0.0))
    err("interference_threshold must be > 0");
  if (!(hop.noise_psd > 0.0)) err("noise_psd must be > 0");
  if (!(hop.kappa_t >= 0.0 && hop.kappa_t < 1.0))
    err("kappa_t must be in [0,1)");
  if (!(hop.kappa_r >= 0.0 && hop.kappa_r < 1.0))
    err("kappa_r must be in [0,1)");
}

}  // namespace

ValidationReport validate(const SystemConfig& cfg) {
  ValidationReport report;
  check_hop(cfg.hop1, "hop1", report);
  check_hop(cfg.hop2, "hop2", report);
  if (cfg.primary_antennas < 1)
    report.errors.push_back("primary_antennas must be >= 1");
  if (!(cfg.p_max > 0.0)) report.errors.push_back("p_max must be > 0");
  if (!(cfg.gamma_th > 0.0)) report.errors.push_back("gamma_th must be > 0");
  if (cfg.hop1.n_rx != cfg.hop2.m_tx) {
    report.warnings.push_back(
        "relay antenna counts disagree across hops (hop1.n_rx=" +
        std::to_string(cfg.hop1.n_rx) +
        ", hop2.m_tx=" + std::to_string(cfg.hop2.m_tx) + ")");
  }
  if (report.ok()) {
    if (cfg.gamma_th >= sndr_ceiling(cfg.hop1))
      report.notices.push_back(
          "gamma_th is at or above hop1's SNDR ceiling: outage is certain");
    if (cfg.gamma_th >= sndr_ceiling(cfg.hop2))
      report.notices.push_back(
          "gamma_th is at or above hop2's SNDR ceiling: outage is certain");
  }
  return report;
}

}  // namespace cogrelay
