// SPDX-License-Identifier: Apache-2.0
#include "cogrelay/asymptotic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cogrelay/detail/hop_series.hpp"
#include "cogrelay/specfun.hpp"

namespace cogrelay::asymptotic {

namespace {

double gamma_fn(int n) { return std::exp(specfun::ln_gamma(n)); }

void check_inputs(double gamma, const HopConfig& hop) {
  if (!(gamma > 0.0)) throw std::domain_error("gamma must be > 0");
  if (gamma >= sndr_ceiling(hop))
    throw std::domain_error(
        "asymptotic hop CDF requires gamma below the SNDR ceiling");
}

}  // namespace

double hop_cdf_high_pmax(double gamma, const HopConfig& hop, int t_p,
                         DiversityScheme scheme, AsymptoticVariant variant) {
  check_inputs(gamma, hop);
  if (t_p < 1) throw std::domain_error("primary antenna count must be >= 1");
  const SeriesTermList& list = series_terms(hop.m_tx, hop.n_rx, scheme);
  detail::HopEnv env = detail::make_hop_env(gamma, hop, t_p, /*p_max=*/1.0);
  analytic::HopCdfResult r =
      detail::eval_hop_series_escalating(list, env, /*floor_only=*/true);
  double v = std::max(r.value, 0.0);
  if (variant == AsymptoticVariant::Printed) v *= gamma_fn(t_p);
  return v;
}

double hop_cdf_high_pmax_and_gain(double gamma, const HopConfig& hop, int t_p,
                                  DiversityScheme scheme,
                                  AsymptoticVariant variant) {
  check_inputs(gamma, hop);
  if (t_p < 1) throw std::domain_error("primary antenna count must be >= 1");
  double n_eff = effective_noise(hop);
  double denom = 1.0 - hop.kappa_t * hop.kappa_t * gamma;
  double a = n_eff * gamma / (denom * hop.mean_gain);
  double w = hop.interference_threshold;
  double ybar = hop.interference_mean_gain;
  int nm = hop.m_tx * hop.n_rx;
  double log_v = nm * std::log(a * ybar / w) +
                 specfun::ln_gamma(nm + t_p);
  if (variant == AsymptoticVariant::Derived) {
    log_v -= specfun::ln_gamma(t_p);
  } else {
    log_v += t_p * std::log(ybar);
  }
  if (scheme == DiversityScheme::TAS_MRC) {
    log_v -= hop.m_tx * (std::log(static_cast<double>(hop.n_rx)) +
                         specfun::ln_gamma(hop.n_rx));
  }
  return std::exp(log_v);
}

double e2e_outage_asymptotic(double gamma_th, const SystemConfig& cfg,
                             AsymptoticRegime regime,
                             AsymptoticVariant variant) {
  auto hop_value = [&](const HopConfig& hop) {
    if (regime == AsymptoticRegime::HIGH_PMAX)
      return hop_cdf_high_pmax(gamma_th, hop, cfg.primary_antennas, cfg.scheme,
                               variant);
    return hop_cdf_high_pmax_and_gain(gamma_th, hop, cfg.primary_antennas,
                                      cfg.scheme, variant);
  };
  return hop_value(cfg.hop1) + hop_value(cfg.hop2);
}

int diversity_order(const SystemConfig& cfg) {
  if (cfg.hop1.n_rx != cfg.hop2.m_tx)
    throw std::invalid_argument(
        "diversity_order requires consistent relay antenna counts");
  return std::min(cfg.hop1.m_tx * cfg.hop1.n_rx,
                  cfg.hop2.m_tx * cfg.hop2.n_rx);
}

double array_order(const SystemConfig& cfg) {
  const HopConfig& h1 = cfg.hop1;
  const HopConfig& h2 = cfg.hop2;
  if (h1.n_rx != h2.m_tx)
    throw std::invalid_argument(
        "array_order requires consistent relay antenna counts");
  bool symmetric = h1.interference_threshold == h2.interference_threshold &&
                   h1.kappa_t == h2.kappa_t && h1.kappa_r == h2.kappa_r &&
                   h1.interference_mean_gain == h2.interference_mean_gain &&
                   effective_noise(h1) == effective_noise(h2);
  if (!symmetric)
    throw std::invalid_argument(
        "array_order requires identical hop statistics");
  int d = diversity_order(cfg);
  int t_p = cfg.primary_antennas;
  double w = h1.interference_threshold;
  double kappa = h1.kappa_t;
  double n_eff = effective_noise(h1);
  double ybar = h1.interference_mean_gain;
  double gamma_th = cfg.gamma_th;
  double value = 2.0 * w * (1.0 - kappa * kappa * gamma_th) /
                 (n_eff * gamma_th *
                  std::pow(ybar, 1.0 + static_cast<double>(t_p) / d)) *
                 std::exp(-specfun::ln_gamma(d + t_p) / d);
  if (cfg.scheme == DiversityScheme::TAS_MRC)
    value *= mrc_sc_gain(h1.n_rx, h2.n_rx);
  return value;
}

double mrc_sc_gain(int t_r, int t_d) {
  if (t_r < 1 || t_d < 1)
    throw std::domain_error("antenna counts must be >= 1");
  int m = std::min(t_r, t_d);
  return std::exp((specfun::ln_gamma(m) + std::log(static_cast<double>(m))) /
                  m);
}

}  // namespace cogrelay::asymptotic
