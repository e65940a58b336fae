// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cogrelay/asymptotic.hpp"
#include "cogrelay/model.hpp"

namespace cogrelay::sweep {

enum class SweptParameter { p_max_db, mean_gain_db, gamma_th_db, w_db };

const char* to_string(SweptParameter p);
SweptParameter swept_parameter_from_string(const std::string& s);

struct SweepRange {
  double start_db = 0.0;
  double stop_db = 0.0;
  int points = 2;
};

// One curve of a sweep: optional overrides applied on top of the base
// configuration.  `kappa` sets kappa_t = kappa_r on both hops; `antennas`
// is {m1, n1, m2, n2}.
struct CurveSpec {
  std::string label;
  std::optional<DiversityScheme> scheme;
  std::optional<double> kappa;
  std::optional<std::array<int, 4>> antennas;
};

struct McSpec {
  long long trials = 1000000;
  std::uint64_t seed = 1;
  bool enabled = true;
};

struct SweepSpec {
  SystemConfig base;
  SweptParameter swept_parameter = SweptParameter::p_max_db;
  SweepRange range;
  std::vector<CurveSpec> curves;
  McSpec mc;
};

struct CurvePoint {
  std::string curve_label;
  double swept_value_db = 0.0;
  double analytic = 0.0;
  std::optional<double> asymptotic;
  std::optional<double> mc_estimate;
  std::optional<double> mc_stderr;
  std::optional<long long> trials;
  std::string status = "ok";
};

bool operator==(const CurvePoint& a, const CurvePoint& b);

// Bundled parameter studies: "fig2", "fig3", "fig4".
SweepSpec figure_preset(const std::string& name);

struct RunOptions {
  int workers = 1;
  asymptotic::AsymptoticVariant variant = asymptotic::AsymptoticVariant::Derived;
  std::optional<long long> trials_override;
  std::optional<std::uint64_t> seed_override;
  bool force_no_mc = false;
};

// The configuration a (curve, grid point) pair resolves to.
SystemConfig resolve_config(const SweepSpec& spec, const CurveSpec& curve,
                            double swept_value_db);

// Runs every (curve, grid point) evaluation.  The analytic column falls
// back to the quadrature oracle (status "quadrature_fallback") when the
// closed-form series reports a cancellation failure.  Monte-Carlo points
// with analytic outage below 1e-6 are skipped; below 1e-4 the trial count
// is raised to 1e7.
std::vector<CurvePoint> run_sweep(const SweepSpec& spec,
                                  const RunOptions& opts = {});

// CSV with the fixed header
// curve,sweep_db,analytic,asymptotic,mc_estimate,mc_stderr,trials,status
// (17 significant digits, LF line endings, empty cells for absent values).
std::string to_csv(const std::vector<CurvePoint>& points);
std::vector<CurvePoint> parse_csv(const std::string& csv);

// JSON configuration mirroring SweepSpec field names; unknown keys are
// rejected at every level.
SweepSpec sweep_spec_from_json(const std::string& json_text);
std::string sweep_spec_to_json(const SweepSpec& spec);

// Asymptote convergence diagnostics for one curve/hop, both variants.
struct AsymptoteCheck {
  std::string curve;
  int hop = 1;
  double floor_ratio_derived = 0.0;   // floor / exact at p_max = 1e6 w
  double floor_ratio_printed = 0.0;
  double gain_ratio_derived = 0.0;    // leading order / exact at large gain
  double gain_ratio_printed = 0.0;
  double gain_xbar_used = 0.0;
};

struct ValidationOutcome {
  std::vector<CurvePoint> points;
  double max_closed_quad_rel = 0.0;
  std::size_t compared_points = 0;
  std::size_t skipped_below_floor = 0;  // quadrature value under 1e-12
  std::size_t fallback_points = 0;
  std::size_t mc_checked = 0;
  std::size_t mc_outside_3sigma = 0;
  std::vector<AsymptoteCheck> asymptote_checks;
  bool pass_closed_quad = false;
  bool pass_mc = false;
  bool pass_asymptote = false;
  bool passed = false;
  std::string report;
};

// Three-way check: closed form vs quadrature per point, Monte-Carlo
// coverage, and asymptote convergence per curve.  Gates follow the
// toolkit's accuracy contract (1e-6 relative closed/quadrature above the
// 1e-12 floor, MC within 3 sigma on at least 95% of eligible points,
// floor ratio within 0.1% and gain ratio within 2% for the selected
// asymptotic variant).
ValidationOutcome validate_mode(const SweepSpec& spec,
                                const RunOptions& opts = {});

}  // namespace cogrelay::sweep
