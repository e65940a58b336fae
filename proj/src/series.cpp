// SPDX-License-Identifier: Apache-2.0
#include "cogrelay/series.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>

#include "cogrelay/analytic.hpp"
#include "cogrelay/detail/real_ops.hpp"
#include "cogrelay/errors.hpp"

namespace cogrelay {

namespace {

using detail::Accumulator;
using detail::real_abs;
using detail::real_exp;
using detail::to_dbl;

constexpr double kGuardDoubleLimit = 1e6;
constexpr double kGuardDdLimit = 1e21;

std::mutex g_corruption_mutex;
double g_corruption = 0.0;

DoubleDouble dd_factorial(int n) {
  DoubleDouble f(1.0);
  for (int i = 2; i <= n; ++i) f = f * DoubleDouble(static_cast<double>(i));
  return f;
}

DoubleDouble dd_binomial(int n, int k) {
  DoubleDouble c(1.0);
  for (int i = 1; i <= k; ++i) {
    c = c * DoubleDouble(static_cast<double>(n - k + i)) /
        DoubleDouble(static_cast<double>(i));
  }
  return c;
}

void push_term(SeriesTermList& list, int k, std::vector<int> p, int phi,
               const DoubleDouble& weight) {
  SeriesTerm t;
  t.k = k;
  t.p = std::move(p);
  t.phi = phi;
  t.weight = weight.hi;
  t.weight_lo = weight.lo;
  list.terms.push_back(std::move(t));
}

DoubleDouble mrc_weight(int m, int k, const std::vector<int>& p, int n) {
  // C(m,k) (-1)^k k!/p_{n-1}! * prod_{t=1}^{n-1} 1/((p_{t-1}-p_t)! (t!)^{p_t-p_{t+1}})
  // with p_0 = k, p_n = 0.  For n = 1 this reduces to C(m,k) (-1)^k.
  DoubleDouble w = dd_binomial(m, k) * dd_factorial(k);
  if (n == 1) {
    w = w / dd_factorial(k);  // k!/p_0! with p_0 = k
  } else {
    w = w / dd_factorial(p[n - 2]);  // 1/p_{n-1}!
    for (int t = 1; t <= n - 1; ++t) {
      int pt_prev = (t == 1) ? k : p[t - 2];
      int pt = p[t - 1];
      int pt_next = (t == n - 1) ? 0 : p[t];
      w = w / dd_factorial(pt_prev - pt);
      if (pt - pt_next > 0) {
        w = w / dd_powi(dd_factorial(t), pt - pt_next);
      }
    }
  }
  if (k & 1) w = -w;
  return w;
}

void emit_mrc_terms(SeriesTermList& list, int m, int n) {
  std::vector<int> p(std::max(n - 1, 0), 0);
  for (int k = 0; k <= m; ++k) {
    if (n == 1) {
      push_term(list, k, {}, 0, mrc_weight(m, k, p, n));
      continue;
    }
    // iterate all nonincreasing vectors with entries in [0, k]
    std::vector<int> v(n - 1, 0);
    bool done = false;
    // enumerate in lexicographic order starting from all-zero
    while (!done) {
      int phi = 0;
      for (int q : v) phi += q;
      push_term(list, k, v, phi, mrc_weight(m, k, v, n));
      // next nonincreasing vector: increment from the last position
      int i = n - 2;
      while (i >= 0) {
        int cap = (i == 0) ? k : v[i - 1];
        if (v[i] < cap) {
          ++v[i];
          for (int j = i + 1; j <= n - 2; ++j) v[j] = 0;
          break;
        }
        --i;
      }
      if (i < 0) done = true;
    }
  }
}

void emit_sc_terms(SeriesTermList& list, int m, int n) {
  int nm = n * m;
  for (int k = 0; k <= nm; ++k) {
    DoubleDouble w = dd_binomial(nm, k);
    if (k & 1) w = -w;
    push_term(list, k, {}, 0, w);
  }
}

template <class Real>
std::pair<double, double> eval_reconstruction(const SeriesTermList& list,
                                              double u_in) {
  const Real u(u_in);
  Accumulator<Real> sum;
  Accumulator<Real> abs_sum;
  int cur_k = -1;
  std::vector<Real> utab;  // utab[phi] = u^phi * exp(-k u)
  int max_phi = 0;
  for (const SeriesTerm& t : list.terms) max_phi = std::max(max_phi, t.phi);
  for (const SeriesTerm& t : list.terms) {
    if (t.k != cur_k) {
      cur_k = t.k;
      Real ek = real_exp(Real(-static_cast<double>(cur_k)) * u);
      utab.assign(static_cast<size_t>(max_phi) + 1, Real(0.0));
      utab[0] = ek;
      for (int f = 1; f <= max_phi; ++f) utab[f] = utab[f - 1] * u;
    }
    Real w = [&t]() {
      if constexpr (std::is_same_v<Real, DoubleDouble>)
        return DoubleDouble(t.weight, t.weight_lo);
      else
        return t.weight;
    }();
    Real contrib = w * utab[t.phi];
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

void self_check(const SeriesTermList& list) {
  // Probe range: z spanning direct-CDF values from 1e-10 to 1 - 1e-10,
  // found by bisection on the monotone direct form.
  auto direct = [&](double z) {
    return analytic::gain_cdf_direct(z, list.m, list.n, 1.0, list.scheme);
  };
  auto quantile = [&](double target) {
    double lo = 1e-12, hi = 1.0;
    while (direct(hi) < target) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
      double mid = 0.5 * (lo + hi);
      (direct(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  double z_lo = quantile(1e-10);
  double z_hi = quantile(1.0 - 1e-10);
  const int probes = 64;
  for (int i = 0; i < probes; ++i) {
    double z =
        z_lo * std::pow(z_hi / z_lo, static_cast<double>(i) / (probes - 1));
    SeriesEvalResult rec = series_gain_cdf(list, z, 1.0);
    double ref = direct(z);
    double rel = std::fabs(rec.value - ref) / std::max(ref, 1e-300);
    if (rel > 1e-9) {
      throw std::logic_error(
          "series term list failed reconstruction check: m=" +
          std::to_string(list.m) + " n=" + std::to_string(list.n) +
          " z=" + std::to_string(z) + " rel=" + std::to_string(rel));
    }
  }
}

}  // namespace

SeriesTermList build_series_terms(int m, int n, DiversityScheme scheme) {
  if (m < 1 || n < 1)
    throw std::domain_error("series_terms: antenna counts must be >= 1");
  if (static_cast<long long>(m) * n > kSeriesCap)
    throw SeriesCapError("series_terms: m*n exceeds the series cap",
                         static_cast<std::size_t>(m) * n, kSeriesCap);
  SeriesTermList list;
  list.m = m;
  list.n = n;
  list.scheme = scheme;
  if (scheme == DiversityScheme::TAS_MRC)
    emit_mrc_terms(list, m, n);
  else
    emit_sc_terms(list, m, n);
  if (static_cast<long long>(m) * n <= kSelfCheckLimit) self_check(list);
  double corruption;
  {
    std::lock_guard<std::mutex> lk(g_corruption_mutex);
    corruption = g_corruption;
  }
  if (corruption != 0.0) {
    for (SeriesTerm& t : list.terms) {
      t.weight *= 1.0 + corruption;
      t.weight_lo *= 1.0 + corruption;
    }
  }
  return list;
}

namespace {
std::mutex g_cache_mutex;
std::map<std::tuple<int, int, DiversityScheme>,
         std::unique_ptr<const SeriesTermList>>
    g_cache;
}  // namespace

const SeriesTermList& series_terms(int m, int n, DiversityScheme scheme) {
  std::lock_guard<std::mutex> lk(g_cache_mutex);
  auto key = std::make_tuple(m, n, scheme);
  auto it = g_cache.find(key);
  if (it == g_cache.end()) {
    auto list = std::make_unique<const SeriesTermList>(
        build_series_terms(m, n, scheme));
    it = g_cache.emplace(key, std::move(list)).first;
  }
  return *it->second;
}

SeriesEvalResult series_gain_cdf(const SeriesTermList& list, double z,
                                 double mean_gain) {
  if (z < 0.0) throw std::domain_error("series_gain_cdf: z must be >= 0");
  if (!(mean_gain > 0.0))
    throw std::domain_error("series_gain_cdf: mean_gain must be > 0");
  if (z == 0.0) return {0.0, 1.0, EvalMode::Double};
  double u = z / mean_gain;
  auto [v, guard] = eval_reconstruction<double>(list, u);
  if (guard <= kGuardDoubleLimit) return {v, guard, EvalMode::Double};
  auto [v2, guard2] = eval_reconstruction<DoubleDouble>(list, u);
  if (guard2 > kGuardDdLimit)
    throw NumericalQualityError(
        "series reconstruction cancellation beyond extended precision", v2,
        guard2);
  return {v2, guard2, EvalMode::DoubleDouble};
}

void set_series_corruption(double rel_epsilon) {
  {
    std::lock_guard<std::mutex> lk(g_corruption_mutex);
    g_corruption = rel_epsilon;
  }
  std::lock_guard<std::mutex> lk(g_cache_mutex);
  g_cache.clear();
}

double series_corruption() {
  std::lock_guard<std::mutex> lk(g_corruption_mutex);
  return g_corruption;
}

}  // namespace cogrelay
