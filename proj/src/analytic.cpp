// SPDX-License-Identifier: Apache-2.0
#include "cogrelay/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "cogrelay/detail/hop_series.hpp"
#include "cogrelay/detail/real_ops.hpp"
#include "cogrelay/errors.hpp"
#include "cogrelay/specfun.hpp"

namespace cogrelay::analytic {

namespace {

using detail::Accumulator;
using detail::erlang_lower_reg;
using detail::HopEnv;
using detail::real_abs;
using detail::real_exp;
using detail::real_powi;
using detail::to_dbl;

// Escalation thresholds.  Compensated double keeps the summation error
// near one ulp per term, so cancellation up to ~1e6 still leaves nine
// good digits; double-double (~1e-32 roundoff) certifies ~1e-7 relative
// up to a guard of ~3e22.  Beyond that the evaluation refuses and the
// caller is expected to switch to the quadrature oracle.
constexpr double kGuardDoubleLimit = 1e6;
constexpr double kGuardDdLimit = 3e22;

template <class Real>
Real weight_of(const SeriesTerm& t) {
  if constexpr (std::is_same_v<Real, DoubleDouble>)
    return DoubleDouble(t.weight, t.weight_lo);
  else
    return t.weight;
}

// Evaluates the per-hop SNDR CDF series (or its interference-limited
// floor when `floor_only`).  Tables are rebuilt per k-group; within a
// group every contribution shares the sign of the group weight, so the
// positive part factors are chained products that stay in range.
template <class Real>
std::pair<double, double> eval_hop_series(const SeriesTermList& list,
                                          const HopEnv& env, bool floor_only) {
  const Real a(env.a), w(env.w), ybar(env.ybar);
  const Real inv_ybar = Real(1.0) / ybar;
  const Real aw = a / w;
  const Real r_pm = floor_only ? Real(0.0) : Real(env.a / env.p_max);
  const Real w0 =
      floor_only ? Real(0.0) : w / (Real(env.p_max) * ybar);
  const Real p_low =
      floor_only ? Real(0.0) : erlang_lower_reg(env.t_p, w0);
  const Real ybar_mtp = real_powi(inv_ybar, env.t_p);

  int max_phi = 0;
  for (const SeriesTerm& t : list.terms) max_phi = std::max(max_phi, t.phi);

  Accumulator<Real> sum;
  Accumulator<Real> abs_sum;
  std::vector<Real> p1tab(static_cast<size_t>(max_phi) + 1, Real(0.0));
  std::vector<Real> gtab(static_cast<size_t>(max_phi) + 1, Real(0.0));
  std::vector<Real> qtab(static_cast<size_t>(max_phi) + 1, Real(0.0));
  int cur_k = -1;

  for (const SeriesTerm& t : list.terms) {
    if (t.k != cur_k) {
      cur_k = t.k;
      const Real kk(static_cast<double>(cur_k));
      const Real beta = kk * aw + inv_ybar;
      // gtab[phi] = (a/w)^phi Gamma(t_p+phi) / (Gamma(t_p) beta^{t_p+phi})
      gtab[0] = real_powi(Real(1.0) / beta, env.t_p);
      for (int f = 1; f <= max_phi; ++f)
        gtab[f] = gtab[f - 1] * aw *
                  Real(static_cast<double>(env.t_p + f - 1)) / beta;
      if (!floor_only) {
        // p1tab[phi] = (a/p_max)^phi exp(-k a/p_max); chained so the
        // exponential keeps the powers in range.
        Real ek = real_exp(-kk * r_pm);
        p1tab[0] = ek;
        for (int f = 1; f <= max_phi; ++f) p1tab[f] = p1tab[f - 1] * r_pm;
        // qtab[phi] = Q(t_p + phi, v) with v = k a/p_max + w/(p_max ybar)
        const Real v = kk * r_pm + w0;
        Real pois = real_exp(-v);
        Real cum(0.0);
        for (int tt = 0; tt < env.t_p; ++tt) {
          cum = cum + pois;
          pois = pois * v / Real(static_cast<double>(tt + 1));
        }
        qtab[0] = cum;
        for (int f = 1; f <= max_phi; ++f) {
          cum = cum + pois;
          pois = pois * v / Real(static_cast<double>(env.t_p + f));
          qtab[f] = cum;
        }
      }
    }
    Real positive_part;
    if (floor_only) {
      positive_part = gtab[t.phi] * ybar_mtp;
    } else {
      positive_part =
          p1tab[t.phi] * p_low + gtab[t.phi] * qtab[t.phi] * ybar_mtp;
    }
    Real contrib = weight_of<Real>(t) * positive_part;
    sum.add(contrib);
    abs_sum.add(real_abs(contrib));
  }
  double v = to_dbl(sum.total());
  double va = to_dbl(abs_sum.total());
  double guard;
  if (v == 0.0)
    guard = (va == 0.0) ? 1.0 : std::numeric_limits<double>::infinity();
  else
    guard = va / std::fabs(v);
  return {v, guard};
}

}  // namespace

double gain_cdf_direct(double z, int m, int n, double mean_gain,
                       DiversityScheme scheme) {
  if (z < 0.0) throw std::domain_error("gain_cdf_direct: z must be >= 0");
  if (m < 1 || n < 1)
    throw std::domain_error("gain_cdf_direct: antenna counts must be >= 1");
  if (!(mean_gain > 0.0))
    throw std::domain_error("gain_cdf_direct: mean_gain must be > 0");
  if (z == 0.0) return 0.0;
  double u = z / mean_gain;
  if (scheme == DiversityScheme::TAS_MRC) {
    double p = specfun::reg_lower_gamma(n, u);
    return std::pow(p, m);
  }
  double p = -std::expm1(-u);
  return std::pow(p, static_cast<double>(n) * m);
}

namespace {

void check_hop_args(const HopConfig& hop, int t_p, double p_max) {
  if (t_p < 1) throw std::domain_error("primary antenna count must be >= 1");
  if (!(p_max > 0.0)) throw std::domain_error("p_max must be > 0");
  if (!(hop.mean_gain > 0.0) || !(hop.interference_mean_gain > 0.0) ||
      !(hop.interference_threshold > 0.0) || !(hop.noise_psd > 0.0))
    throw std::domain_error("hop gains and powers must be > 0");
  if (!(hop.kappa_t >= 0.0 && hop.kappa_t < 1.0) ||
      !(hop.kappa_r >= 0.0 && hop.kappa_r < 1.0))
    throw std::domain_error("impairment levels must be in [0,1)");
}

}  // namespace

HopCdfResult hop_sndr_cdf_detailed(double gamma, const HopConfig& hop, int t_p,
                                   double p_max, DiversityScheme scheme) {
  check_hop_args(hop, t_p, p_max);
  if (gamma < 0.0) throw std::domain_error("gamma must be >= 0");
  if (gamma == 0.0) return {0.0, 1.0, EvalMode::Double};
  if (gamma >= sndr_ceiling(hop)) return {1.0, 1.0, EvalMode::Double};
  const SeriesTermList& list = series_terms(hop.m_tx, hop.n_rx, scheme);
  HopEnv env = detail::make_hop_env(gamma, hop, t_p, p_max);
  HopCdfResult r =
      detail::eval_hop_series_escalating(list, env, /*floor_only=*/false);
  r.value = std::clamp(r.value, 0.0, 1.0);
  return r;
}

double hop_sndr_cdf(double gamma, const HopConfig& hop, int t_p, double p_max,
                    DiversityScheme scheme) {
  return hop_sndr_cdf_detailed(gamma, hop, t_p, p_max, scheme).value;
}

namespace {

// Recursive adaptive Simpson with Richardson correction.  `budget`
// counts panel splits; exhausting it aborts with the best estimate.
struct SimpsonState {
  int budget;
  bool exhausted = false;
};

template <class F>
double simpson_recurse(const F& f, double x0, double x2, double f0, double f1,
                       double f2, double whole, double tol, int depth,
                       SimpsonState& st) {
  double x1 = 0.5 * (x0 + x2);
  double xl = 0.5 * (x0 + x1);
  double xr = 0.5 * (x1 + x2);
  double fl = f(xl);
  double fr = f(xr);
  double left = (x1 - x0) / 6.0 * (f0 + 4.0 * fl + f1);
  double right = (x2 - x1) / 6.0 * (f1 + 4.0 * fr + f2);
  double delta = left + right - whole;
  if (std::fabs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  if (depth > 48 || st.budget <= 0) {
    st.exhausted = true;
    return left + right + delta / 15.0;
  }
  st.budget -= 2;
  return simpson_recurse(f, x0, x1, f0, fl, f1, left, 0.5 * tol, depth + 1,
                         st) +
         simpson_recurse(f, x1, x2, f1, fr, f2, right, 0.5 * tol, depth + 1,
                         st);
}

template <class F>
double integrate_adaptive(const F& f, double a, double b, double tol,
                          int max_panels, bool& exhausted) {
  // Seed with a uniform grid so a single interior peak cannot slip
  // between the first samples, then refine each cell adaptively.
  constexpr int kSeedPanels = 32;
  SimpsonState st{max_panels};
  double total = 0.0;
  double width = (b - a) / kSeedPanels;
  double left_val = f(a);
  for (int i = 0; i < kSeedPanels; ++i) {
    double x0 = a + i * width;
    double x2 = (i == kSeedPanels - 1) ? b : x0 + width;
    double f0 = left_val;
    double f1 = f(0.5 * (x0 + x2));
    double f2 = f(x2);
    left_val = f2;
    double whole = (x2 - x0) / 6.0 * (f0 + 4.0 * f1 + f2);
    total += simpson_recurse(f, x0, x2, f0, f1, f2, whole,
                             tol / kSeedPanels, 0, st);
  }
  exhausted = st.exhausted;
  return total;
}

}  // namespace

double hop_sndr_cdf_quadrature(double gamma, const HopConfig& hop, int t_p,
                               double p_max, DiversityScheme scheme) {
  check_hop_args(hop, t_p, p_max);
  if (gamma < 0.0) throw std::domain_error("gamma must be >= 0");
  if (gamma == 0.0) return 0.0;
  if (gamma >= sndr_ceiling(hop)) return 1.0;

  double n_eff = effective_noise(hop);
  double denom = 1.0 - hop.kappa_t * hop.kappa_t * gamma;
  double w = hop.interference_threshold;
  double ybar = hop.interference_mean_gain;
  double w0 = w / (p_max * ybar);
  double z_pmax = n_eff * gamma / (p_max * denom);
  double part1 = gain_cdf_direct(z_pmax, hop.m_tx, hop.n_rx, hop.mean_gain,
                                 scheme) *
                 specfun::reg_lower_gamma(t_p, w0);

  double c = w / p_max;                      // lower limit of the tail
  double zscale = n_eff * gamma / (w * denom);  // F_X(zscale * h)
  double lg_tp = specfun::ln_gamma(t_p);
  auto integrand = [&](double h) {
    double logdens =
        (t_p - 1) * std::log(h) - h / ybar - lg_tp - t_p * std::log(ybar);
    if (logdens < -745.0) return 0.0;
    return gain_cdf_direct(zscale * h, hop.m_tx, hop.n_rx, hop.mean_gain,
                           scheme) *
           std::exp(logdens);
  };
  // Map [c, inf) onto [0, 1): h = c + s t/(1-t).  The integrand peaks
  // near h = (t_p + m n) ybar when the gain CDF is still rising like
  // h^{m n}; the scale keeps that region away from the compressed end.
  double s = c + ybar * (t_p + hop.m_tx * hop.n_rx);
  auto g = [&](double t) {
    if (t >= 1.0) return 0.0;
    double om = 1.0 - t;
    double h = c + s * t / om;
    return integrand(h) * s / (om * om);
  };

  const int max_panels = 4000;
  bool exhausted = false;
  double tail = integrate_adaptive(g, 0.0, 1.0, 1e-10, max_panels, exhausted);
  if (exhausted)
    throw QuadratureAccuracyError(
        "hop CDF quadrature did not reach tolerance", part1 + tail, 1e-10);
  // Relative refinement for small integrals: the absolute 1e-10 contract
  // is not enough resolution when the CDF itself is tiny.
  for (int pass = 0; pass < 4 && tail > 0.0 && tail < 1e-3; ++pass) {
    double tol = std::max(tail * 1e-9, 1e-305);
    double refined = integrate_adaptive(g, 0.0, 1.0, tol, max_panels,
                                        exhausted);
    if (exhausted)
      throw QuadratureAccuracyError(
          "hop CDF quadrature did not reach relative tolerance",
          part1 + refined, tol);
    bool settled = std::fabs(refined - tail) <= 1e-8 * std::max(refined, tail);
    tail = refined;
    if (settled) break;
  }
  return std::clamp(part1 + tail, 0.0, 1.0);
}

double combine_hops(double f1, double f2) { return f1 + f2 - f1 * f2; }

double e2e_outage(double gamma_th, const SystemConfig& cfg) {
  double f1 = hop_sndr_cdf(gamma_th, cfg.hop1, cfg.primary_antennas, cfg.p_max,
                           cfg.scheme);
  double f2 = hop_sndr_cdf(gamma_th, cfg.hop2, cfg.primary_antennas, cfg.p_max,
                           cfg.scheme);
  return combine_hops(f1, f2);
}

double e2e_outage_quadrature(double gamma_th, const SystemConfig& cfg) {
  double f1 = hop_sndr_cdf_quadrature(gamma_th, cfg.hop1, cfg.primary_antennas,
                                      cfg.p_max, cfg.scheme);
  double f2 = hop_sndr_cdf_quadrature(gamma_th, cfg.hop2, cfg.primary_antennas,
                                      cfg.p_max, cfg.scheme);
  return combine_hops(f1, f2);
}

double single_antenna_outage(double gamma_th, const SystemConfig& cfg) {
  if (cfg.hop1.m_tx != 1 || cfg.hop1.n_rx != 1 || cfg.hop2.m_tx != 1 ||
      cfg.hop2.n_rx != 1 || cfg.primary_antennas != 1)
    throw std::invalid_argument(
        "single_antenna_outage requires 1x1 hops and one primary antenna");
  if (!(gamma_th > 0.0)) return 0.0;
  const HopConfig* hops[2] = {&cfg.hop1, &cfg.hop2};
  double exp_arg = 0.0;
  double product = 1.0;
  for (const HopConfig* hop : hops) {
    if (gamma_th >= sndr_ceiling(*hop)) return 1.0;
    double n_eff = effective_noise(*hop);
    double denom = 1.0 - hop->kappa_t * hop->kappa_t * gamma_th;
    double a = n_eff * gamma_th / (denom * hop->mean_gain);
    double w = hop->interference_threshold;
    double ybar = hop->interference_mean_gain;
    exp_arg += a / cfg.p_max;
    product *= 1.0 - std::exp(-w / (cfg.p_max * ybar)) * a * ybar /
                         (a * ybar + w);
  }
  return 1.0 - std::exp(-exp_arg) * product;
}

}  // namespace cogrelay::analytic

namespace cogrelay::detail {

HopEnv make_hop_env(double gamma, const HopConfig& hop, int t_p,
                    double p_max) {
  double n_eff = effective_noise(hop);
  double denom = 1.0 - hop.kappa_t * hop.kappa_t * gamma;
  HopEnv env;
  env.a = n_eff * gamma / (denom * hop.mean_gain);
  env.p_max = p_max;
  env.w = hop.interference_threshold;
  env.ybar = hop.interference_mean_gain;
  env.t_p = t_p;
  return env;
}

analytic::HopCdfResult eval_hop_series_escalating(const SeriesTermList& list,
                                                  const HopEnv& env,
                                                  bool floor_only) {
  auto [v, guard] = analytic::eval_hop_series<double>(list, env, floor_only);
  if (guard <= analytic::kGuardDoubleLimit)
    return {v, guard, EvalMode::Double};
  auto [v2, guard2] =
      analytic::eval_hop_series<DoubleDouble>(list, env, floor_only);
  if (guard2 > analytic::kGuardDdLimit)
    throw NumericalQualityError(
        "hop CDF series cancellation beyond extended precision", v2, guard2);
  return {v2, guard2, EvalMode::DoubleDouble};
}

}  // namespace cogrelay::detail
