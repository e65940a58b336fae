// SPDX-License-Identifier: Apache-2.0
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cogrelay/analytic.hpp"
#include "cogrelay/asymptotic.hpp"
#include "cogrelay/errors.hpp"
#include "cogrelay/montecarlo.hpp"
#include "cogrelay/series.hpp"
#include "cogrelay/sweep.hpp"

namespace {

using namespace cogrelay;

struct CommonFlags {
  std::optional<long long> trials;
  std::optional<std::uint64_t> seed;
  int workers = 1;
  std::string out;
  bool no_mc = false;
  std::string variant = "derived";
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--trials", flags.trials,
                  "Monte-Carlo trials per point (overrides the spec)");
  cmd->add_option("--seed", flags.seed, "Monte-Carlo seed (overrides the spec)");
  cmd->add_option("--workers", flags.workers, "worker thread count")
      ->default_val(1);
  cmd->add_option("--out", flags.out, "write the CSV table to this path");
  cmd->add_flag("--no-mc", flags.no_mc, "skip Monte-Carlo columns");
  cmd->add_option("--asymptotic-variant", flags.variant,
                  "asymptote constants: derived or printed")
      ->check(CLI::IsMember({"derived", "printed"}))
      ->default_val("derived");
}

sweep::RunOptions to_run_options(const CommonFlags& flags) {
  sweep::RunOptions opts;
  opts.workers = flags.workers;
  opts.trials_override = flags.trials;
  opts.seed_override = flags.seed;
  opts.force_no_mc = flags.no_mc;
  opts.variant = flags.variant == "printed"
                     ? asymptotic::AsymptoticVariant::Printed
                     : asymptotic::AsymptoticVariant::Derived;
  return opts;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

int run_points(const sweep::SweepSpec& spec, const CommonFlags& flags) {
  std::vector<sweep::CurvePoint> points =
      sweep::run_sweep(spec, to_run_options(flags));
  write_output(flags.out, sweep::to_csv(points));
  return 0;
}

int run_validate(const sweep::SweepSpec& spec, const CommonFlags& flags) {
  sweep::ValidationOutcome outcome =
      sweep::validate_mode(spec, to_run_options(flags));
  std::cerr << outcome.report;
  write_output(flags.out, sweep::to_csv(outcome.points));
  return outcome.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "cogrelay: outage probability of an underlay cognitive dual-hop "
      "DF relay with TAS/MRC or TAS/SC combining and transceiver "
      "hardware impairments"};
  app.require_subcommand(1);

  // figure <name>
  std::string figure_name;
  CommonFlags figure_flags;
  std::string dump_config;
  CLI::App* figure = app.add_subcommand(
      "figure", "run a bundled parameter study (fig2, fig3, fig4)");
  figure->add_option("name", figure_name, "preset name")->required();
  figure->add_option("--dump-config", dump_config,
                     "write the preset's JSON configuration and exit");
  add_common_flags(figure, figure_flags);

  // sweep --config
  std::string sweep_config;
  CommonFlags sweep_flags;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "run a sweep described by a JSON config");
  sweep_cmd->add_option("--config", sweep_config, "JSON sweep spec")
      ->required();
  add_common_flags(sweep_cmd, sweep_flags);

  // validate --config
  std::string validate_config;
  CommonFlags validate_flags;
  double corrupt_series = 0.0;
  CLI::App* validate_cmd = app.add_subcommand(
      "validate",
      "three-way check: closed form vs quadrature vs Monte-Carlo, plus "
      "asymptote convergence gates; nonzero exit on failure");
  validate_cmd->add_option("--config", validate_config, "JSON sweep spec")
      ->required();
  validate_cmd->add_option(
      "--corrupt-series", corrupt_series,
      "negative control: perturb series coefficients by this relative "
      "amount (the gates must then fail)");
  add_common_flags(validate_cmd, validate_flags);

  // point: single evaluation with all parameters as flags
  CommonFlags point_flags;
  int m1 = 1, n1 = 1, m2 = 1, n2 = 1, tp = 1;
  std::string scheme_name = "TAS_MRC";
  double gamma_th_db = 0.0, pmax_db = 10.0;
  double xbar_db = 0.0, ybar_db = 0.0, w_db = 0.0;
  std::optional<double> xbar1_db, xbar2_db, ybar1_db, ybar2_db, w1_db, w2_db;
  double kappa = 0.0;
  std::optional<double> kt1, kr1, kt2, kr2;
  double noise_psd = 1.0;
  CLI::App* point_cmd =
      app.add_subcommand("point", "evaluate a single configuration");
  point_cmd->add_option("--m1", m1, "hop-1 transmit antennas");
  point_cmd->add_option("--n1", n1, "hop-1 receive antennas");
  point_cmd->add_option("--m2", m2, "hop-2 transmit antennas");
  point_cmd->add_option("--n2", n2, "hop-2 receive antennas");
  point_cmd->add_option("--tp", tp, "primary receiver antennas");
  point_cmd->add_option("--scheme", scheme_name, "TAS_MRC or TAS_SC")
      ->check(CLI::IsMember({"TAS_MRC", "TAS_SC"}));
  point_cmd->add_option("--gamma-th-db", gamma_th_db, "outage threshold [dB]");
  point_cmd->add_option("--pmax-db", pmax_db, "maximum transmit power [dB]");
  point_cmd->add_option("--xbar-db", xbar_db, "desired-link mean gain [dB]");
  point_cmd->add_option("--ybar-db", ybar_db,
                        "interference-link mean gain [dB]");
  point_cmd->add_option("--w-db", w_db, "interference threshold [dB]");
  point_cmd->add_option("--xbar1-db", xbar1_db, "hop-1 override of --xbar-db");
  point_cmd->add_option("--xbar2-db", xbar2_db, "hop-2 override of --xbar-db");
  point_cmd->add_option("--ybar1-db", ybar1_db, "hop-1 override of --ybar-db");
  point_cmd->add_option("--ybar2-db", ybar2_db, "hop-2 override of --ybar-db");
  point_cmd->add_option("--w1-db", w1_db, "hop-1 override of --w-db");
  point_cmd->add_option("--w2-db", w2_db, "hop-2 override of --w-db");
  point_cmd->add_option("--kappa", kappa,
                        "impairment level for all transceivers");
  point_cmd->add_option("--kappa-t1", kt1, "hop-1 transmitter impairment");
  point_cmd->add_option("--kappa-r1", kr1, "hop-1 receiver impairment");
  point_cmd->add_option("--kappa-t2", kt2, "hop-2 transmitter impairment");
  point_cmd->add_option("--kappa-r2", kr2, "hop-2 receiver impairment");
  point_cmd->add_option("--noise-psd", noise_psd, "AWGN PSD (linear)");
  add_common_flags(point_cmd, point_flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (figure->parsed()) {
      sweep::SweepSpec spec = sweep::figure_preset(figure_name);
      if (!dump_config.empty()) {
        write_output(dump_config, sweep::sweep_spec_to_json(spec));
        return 0;
      }
      return run_points(spec, figure_flags);
    }
    if (sweep_cmd->parsed()) {
      sweep::SweepSpec spec =
          sweep::sweep_spec_from_json(read_file(sweep_config));
      return run_points(spec, sweep_flags);
    }
    if (validate_cmd->parsed()) {
      if (corrupt_series != 0.0) set_series_corruption(corrupt_series);
      sweep::SweepSpec spec =
          sweep::sweep_spec_from_json(read_file(validate_config));
      return run_validate(spec, validate_flags);
    }
    if (point_cmd->parsed()) {
      SystemConfig cfg;
      cfg.hop1.m_tx = m1;
      cfg.hop1.n_rx = n1;
      cfg.hop2.m_tx = m2;
      cfg.hop2.n_rx = n2;
      cfg.primary_antennas = tp;
      cfg.scheme = scheme_from_string(scheme_name);
      cfg.gamma_th = db_to_linear(gamma_th_db);
      cfg.p_max = db_to_linear(pmax_db);
      cfg.hop1.mean_gain = db_to_linear(xbar1_db.value_or(xbar_db));
      cfg.hop2.mean_gain = db_to_linear(xbar2_db.value_or(xbar_db));
      cfg.hop1.interference_mean_gain = db_to_linear(ybar1_db.value_or(ybar_db));
      cfg.hop2.interference_mean_gain = db_to_linear(ybar2_db.value_or(ybar_db));
      cfg.hop1.interference_threshold = db_to_linear(w1_db.value_or(w_db));
      cfg.hop2.interference_threshold = db_to_linear(w2_db.value_or(w_db));
      cfg.hop1.kappa_t = kt1.value_or(kappa);
      cfg.hop1.kappa_r = kr1.value_or(kappa);
      cfg.hop2.kappa_t = kt2.value_or(kappa);
      cfg.hop2.kappa_r = kr2.value_or(kappa);
      cfg.hop1.noise_psd = cfg.hop2.noise_psd = noise_psd;

      ValidationReport report = validate(cfg);
      if (!report.ok()) {
        for (const std::string& e : report.errors)
          std::cerr << "error: " << e << "\n";
        return 2;
      }
      for (const std::string& w : report.warnings)
        std::cerr << "warning: " << w << "\n";
      for (const std::string& n : report.notices)
        std::cerr << "notice: " << n << "\n";

      auto variant = point_flags.variant == "printed"
                         ? asymptotic::AsymptoticVariant::Printed
                         : asymptotic::AsymptoticVariant::Derived;
      std::string status = "ok";
      double analytic_value;
      try {
        analytic_value = analytic::e2e_outage(cfg.gamma_th, cfg);
      } catch (const NumericalQualityError&) {
        analytic_value = analytic::e2e_outage_quadrature(cfg.gamma_th, cfg);
        status = "quadrature_fallback";
      }
      double quad = analytic::e2e_outage_quadrature(cfg.gamma_th, cfg);
      std::printf("analytic            %.17g\n", analytic_value);
      std::printf("quadrature          %.17g\n", quad);
      try {
        double floor = asymptotic::e2e_outage_asymptotic(
            cfg.gamma_th, cfg, asymptotic::AsymptoticRegime::HIGH_PMAX,
            variant);
        std::printf("asymptotic_floor    %.17g%s\n", floor,
                    floor >= 1.0 ? "  (outside regime)" : "");
        double gain_regime = asymptotic::e2e_outage_asymptotic(
            cfg.gamma_th, cfg, asymptotic::AsymptoticRegime::HIGH_PMAX_AND_GAIN,
            variant);
        std::printf("asymptotic_gain     %.17g%s\n", gain_regime,
                    gain_regime >= 1.0 ? "  (outside regime)" : "");
      } catch (const std::exception&) {
        std::printf("asymptotic_floor    n/a (not defined here)\n");
      }
      try {
        std::printf("diversity_order     %d\n", asymptotic::diversity_order(cfg));
        std::printf("array_order         %.17g\n", asymptotic::array_order(cfg));
      } catch (const std::invalid_argument&) {
        // asymmetric configuration: array order undefined
      }
      std::optional<mc::OutageEstimate> est;
      if (!point_flags.no_mc) {
        long long trials = point_flags.trials.value_or(1000000);
        std::uint64_t seed = point_flags.seed.value_or(1);
        est = mc::estimate_outage(cfg, trials, seed, point_flags.workers);
        std::printf("mc_estimate         %.17g\n", est->estimate);
        std::printf("mc_stderr           %.17g\n", est->stderr_);
        std::printf("mc_trials           %lld\n", est->trials);
      }
      std::printf("status              %s\n", status.c_str());
      if (!point_flags.out.empty()) {
        sweep::CurvePoint cp;
        cp.curve_label = "point";
        cp.swept_value_db = gamma_th_db;
        cp.analytic = analytic_value;
        cp.status = status;
        if (est) {
          cp.mc_estimate = est->estimate;
          cp.mc_stderr = est->stderr_;
          cp.trials = est->trials;
        }
        write_output(point_flags.out, sweep::to_csv({cp}));
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
