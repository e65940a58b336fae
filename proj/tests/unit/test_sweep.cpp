// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "cogrelay/analytic.hpp"
#include "cogrelay/series.hpp"
#include "cogrelay/sweep.hpp"

using namespace cogrelay;
using namespace cogrelay::sweep;

namespace {

SweepSpec tiny_single_antenna_spec() {
  // Sweeps p_max over {0 dB, 10 dB}; at 10 dB the configuration is the
  // single-antenna reference point.
  SweepSpec spec;
  spec.base.p_max = 1.0;
  spec.base.gamma_th = 1.0;
  spec.swept_parameter = SweptParameter::p_max_db;
  spec.range = {0.0, 10.0, 2};
  spec.curves.push_back({"ref", std::nullopt, std::nullopt, std::nullopt});
  spec.mc.enabled = false;
  return spec;
}

}  // namespace

TEST_CASE("figure presets carry the caption parameters") {
  SweepSpec fig3 = figure_preset("fig3");
  CHECK(fig3.base.gamma_th == doctest::Approx(3.9811).epsilon(1e-4));
  CHECK(fig3.base.hop1.interference_threshold ==
        doctest::Approx(3.9811).epsilon(1e-4));
  CHECK(fig3.base.p_max == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(fig3.base.hop1.interference_mean_gain ==
        doctest::Approx(1.2589).epsilon(1e-4));
  CHECK(fig3.base.primary_antennas == 1);
  CHECK(fig3.base.hop1.m_tx == 2);
  CHECK(fig3.base.hop1.n_rx == 2);
  CHECK(fig3.swept_parameter == SweptParameter::mean_gain_db);
  CHECK(fig3.range.start_db == 0.0);
  CHECK(fig3.range.stop_db == 40.0);
  CHECK(fig3.curves.size() == 4);

  SweepSpec fig2 = figure_preset("fig2");
  CHECK(fig2.base.primary_antennas == 2);
  CHECK(fig2.base.gamma_th == doctest::Approx(db_to_linear(3.0)));
  CHECK(fig2.base.hop1.interference_threshold == fig2.base.gamma_th);
  CHECK(fig2.base.hop1.mean_gain == doctest::Approx(db_to_linear(4.0)));
  CHECK(fig2.curves.size() == 4);
  CHECK(fig2.swept_parameter == SweptParameter::p_max_db);

  SweepSpec fig4 = figure_preset("fig4");
  CHECK(fig4.base.gamma_th == doctest::Approx(db_to_linear(8.0)));
  CHECK(fig4.curves.size() == 8);
  bool has8x8 = false;
  for (const CurveSpec& c : fig4.curves)
    if (c.antennas && (*c.antennas)[0] == 8) has8x8 = true;
  CHECK(has8x8);

  CHECK_THROWS_AS(figure_preset("fig9"), std::invalid_argument);
}

TEST_CASE("tiny sweep reproduces the reference outage value") {
  SweepSpec spec = tiny_single_antenna_spec();
  std::vector<CurvePoint> points = run_sweep(spec);
  REQUIRE(points.size() == 2);
  CHECK(points[1].swept_value_db == doctest::Approx(10.0));
  CHECK(points[1].analytic == doctest::Approx(0.7545075).epsilon(1e-6));
  CHECK(points[1].status == "ok");
  CHECK_FALSE(points[0].mc_estimate.has_value());
}

TEST_CASE("mc columns present exactly when enabled") {
  SweepSpec spec = tiny_single_antenna_spec();
  spec.mc.enabled = true;
  spec.mc.trials = 20000;
  spec.mc.seed = 5;
  std::vector<CurvePoint> points = run_sweep(spec);
  for (const CurvePoint& p : points) {
    CHECK(p.mc_estimate.has_value());
    CHECK(p.mc_stderr.has_value());
    CHECK(p.trials.has_value());
    CHECK(*p.trials == 20000);
    CHECK(std::fabs(*p.mc_estimate - p.analytic) <= 4.0 * *p.mc_stderr);
  }
}

TEST_CASE("gamma_th sweep saturates at the hardware ceiling") {
  SweepSpec spec;
  spec.base.hop1.kappa_t = spec.base.hop1.kappa_r = 0.175;
  spec.base.hop2.kappa_t = spec.base.hop2.kappa_r = 0.175;
  spec.base.p_max = 10.0;
  spec.swept_parameter = SweptParameter::gamma_th_db;
  spec.range = {0.0, 18.0, 7};  // up to ~63 linear, ceiling is 32.65
  spec.curves.push_back({"k0175", std::nullopt, std::nullopt, std::nullopt});
  spec.mc.enabled = false;
  std::vector<CurvePoint> points = run_sweep(spec);
  CHECK(points.back().analytic == 1.0);
  CHECK(points.front().analytic < 1.0);
}

TEST_CASE("sweep rejects broken specs") {
  SweepSpec spec = tiny_single_antenna_spec();
  SUBCASE("too few points") {
    spec.range.points = 1;
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
  }
  SUBCASE("reversed range") {
    spec.range = {10.0, 0.0, 5};
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
  }
  SUBCASE("duplicate labels") {
    spec.curves.push_back(spec.curves.front());
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
  }
  SUBCASE("invalid configuration") {
    spec.base.hop1.mean_gain = -1.0;
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
  }
}

TEST_CASE("CSV rendering and exact round trip") {
  SweepSpec spec = tiny_single_antenna_spec();
  spec.mc.enabled = true;
  spec.mc.trials = 5000;
  std::vector<CurvePoint> points = run_sweep(spec);
  std::string csv = to_csv(points);
  CHECK(csv.rfind("curve,sweep_db,analytic,asymptotic,mc_estimate,mc_stderr,"
                  "trials,status\n",
                  0) == 0);
  CHECK(csv.find("\r") == std::string::npos);  // LF only
  std::vector<CurvePoint> parsed = parse_csv(csv);
  REQUIRE(parsed.size() == points.size());
  for (std::size_t i = 0; i < points.size(); ++i) CHECK(parsed[i] == points[i]);
  CHECK_THROWS_AS(parse_csv("bogus\n1,2\n"), std::invalid_argument);
}

TEST_CASE("identical spec and seed give byte-identical CSV, any workers") {
  SweepSpec spec = tiny_single_antenna_spec();
  spec.mc.enabled = true;
  spec.mc.trials = 20000;
  spec.mc.seed = 42;
  RunOptions one;
  one.workers = 1;
  RunOptions four;
  four.workers = 4;
  std::string a = to_csv(run_sweep(spec, one));
  std::string b = to_csv(run_sweep(spec, four));
  std::string c = to_csv(run_sweep(spec, one));
  CHECK(a == b);
  CHECK(a == c);
}

TEST_CASE("JSON round trip and strict key checking") {
  SweepSpec spec = figure_preset("fig3");
  std::string text = sweep_spec_to_json(spec);
  SweepSpec back = sweep_spec_from_json(text);
  CHECK(sweep_spec_to_json(back) == text);
  CHECK(back.curves.size() == spec.curves.size());
  CHECK(back.base.gamma_th == spec.base.gamma_th);
  CHECK(back.mc.trials == spec.mc.trials);

  CHECK_THROWS_AS(sweep_spec_from_json(R"({"bogus": 1})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(sweep_spec_from_json(R"({
    "base": {"hop1": {"m_tx": 1, "typo_key": 2}},
    "swept_parameter": "p_max_db",
    "range": {"start_db": 0, "stop_db": 10, "points": 2},
    "curves": [{"label": "a"}]
  })"),
                  std::invalid_argument);
  CHECK_THROWS_AS(sweep_spec_from_json(R"({
    "base": {},
    "swept_parameter": "sideways",
    "range": {"start_db": 0, "stop_db": 10, "points": 2},
    "curves": [{"label": "a"}]
  })"),
                  std::invalid_argument);
}

TEST_CASE("validate_mode on a small spec") {
  SweepSpec spec = tiny_single_antenna_spec();
  spec.range = {0.0, 12.0, 4};
  spec.mc.enabled = true;
  spec.mc.trials = 40000;
  spec.mc.seed = 11;
  ValidationOutcome outcome = validate_mode(spec);
  CHECK(outcome.passed);
  CHECK(outcome.pass_closed_quad);
  CHECK(outcome.max_closed_quad_rel <= 1e-6);
  CHECK(outcome.compared_points > 0);
  CHECK(outcome.mc_checked > 0);
  CHECK_FALSE(outcome.asymptote_checks.empty());
  CHECK(outcome.report.find("overall: PASS") != std::string::npos);
}

TEST_CASE("validate_mode without MC produces a quadrature-only report") {
  SweepSpec spec = tiny_single_antenna_spec();
  spec.range = {0.0, 12.0, 3};
  ValidationOutcome outcome = validate_mode(spec);
  CHECK(outcome.mc_checked == 0);
  CHECK(outcome.passed);
}

TEST_CASE("corrupted series coefficients trip the validation gate") {
  set_series_corruption(3e-4);
  SweepSpec spec = tiny_single_antenna_spec();
  spec.range = {0.0, 12.0, 3};
  ValidationOutcome outcome = validate_mode(spec);
  set_series_corruption(0.0);
  CHECK_FALSE(outcome.pass_closed_quad);
  CHECK_FALSE(outcome.passed);
}

TEST_CASE("fig3 output keeps TAS/MRC below TAS/SC everywhere") {
  SweepSpec spec = figure_preset("fig3");
  spec.range.points = 11;  // coarser grid keeps the test quick
  spec.mc.enabled = false;
  std::vector<CurvePoint> points = run_sweep(spec);
  auto value_at = [&](const std::string& label, std::size_t i) {
    for (const CurvePoint& p : points)
      if (p.curve_label == label &&
          p.swept_value_db ==
              doctest::Approx(spec.range.start_db +
                              (spec.range.stop_db - spec.range.start_db) * i /
                                  (spec.range.points - 1)))
        return p.analytic;
    FAIL("missing point");
    return 0.0;
  };
  for (std::size_t i = 0; i + 1 < 11; ++i) {
    CHECK(value_at("tas_mrc_k0", i) <= value_at("tas_sc_k0", i) + 1e-12);
    CHECK(value_at("tas_mrc_k015", i) <= value_at("tas_sc_k015", i) + 1e-12);
  }
}

TEST_CASE("fig4 impaired curves flatten onto the analytic floor") {
  SweepSpec spec = figure_preset("fig4");
  spec.mc.enabled = false;
  // keep the 2x2 impaired curves only; full grid for the tail slope
  std::vector<CurveSpec> kept;
  for (const CurveSpec& c : spec.curves)
    if (c.label == "tas_mrc_2x2_k015" || c.label == "tas_sc_2x2_k015")
      kept.push_back(c);
  spec.curves = kept;
  std::vector<CurvePoint> points = run_sweep(spec);
  const std::size_t n = static_cast<std::size_t>(spec.range.points);
  for (std::size_t c = 0; c < spec.curves.size(); ++c) {
    // last decade of the sweep: 40 dB -> 50 dB
    const CurvePoint& a = points[c * n + n - 11];
    const CurvePoint& b = points[c * n + n - 1];
    double slope = (std::log10(b.analytic) - std::log10(a.analytic)) /
                   ((b.swept_value_db - a.swept_value_db) / 10.0);
    CHECK(std::fabs(slope) < 0.1);  // outage floor
    // converged e2e floor: hop floors combined
    SystemConfig cfg = resolve_config(spec, spec.curves[c], b.swept_value_db);
    double f1 = asymptotic::hop_cdf_high_pmax(cfg.gamma_th, cfg.hop1,
                                              cfg.primary_antennas, cfg.scheme);
    double f2 = asymptotic::hop_cdf_high_pmax(cfg.gamma_th, cfg.hop2,
                                              cfg.primary_antennas, cfg.scheme);
    double floor = analytic::combine_hops(f1, f2);
    CHECK(b.analytic / floor == doctest::Approx(1.0).epsilon(0.01));
    // the CSV asymptotic column carries the uncombined hop sum
    REQUIRE(b.asymptotic.has_value());
    CHECK(*b.asymptotic == doctest::Approx(f1 + f2).epsilon(1e-12));
  }
}
