// SPDX-License-Identifier: Apache-2.0
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cogrelay/analytic.hpp"
#include "cogrelay/asymptotic.hpp"
#include "cogrelay/montecarlo.hpp"
#include "cogrelay/specfun.hpp"
#include "cogrelay/sweep.hpp"

namespace py = pybind11;
using namespace cogrelay;

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Outage analysis of an underlay cognitive dual-hop DF relay with "
      "TAS/MRC or TAS/SC combining and transceiver hardware impairments";

  py::enum_<DiversityScheme>(m, "DiversityScheme")
      .value("TAS_MRC", DiversityScheme::TAS_MRC)
      .value("TAS_SC", DiversityScheme::TAS_SC);

  py::class_<HopConfig>(m, "HopConfig")
      .def(py::init<>())
      .def_readwrite("m_tx", &HopConfig::m_tx)
      .def_readwrite("n_rx", &HopConfig::n_rx)
      .def_readwrite("mean_gain", &HopConfig::mean_gain)
      .def_readwrite("interference_mean_gain",
                     &HopConfig::interference_mean_gain)
      .def_readwrite("interference_threshold",
                     &HopConfig::interference_threshold)
      .def_readwrite("kappa_t", &HopConfig::kappa_t)
      .def_readwrite("kappa_r", &HopConfig::kappa_r)
      .def_readwrite("noise_psd", &HopConfig::noise_psd);

  py::class_<SystemConfig>(m, "SystemConfig")
      .def(py::init<>())
      .def_readwrite("hop1", &SystemConfig::hop1)
      .def_readwrite("hop2", &SystemConfig::hop2)
      .def_readwrite("primary_antennas", &SystemConfig::primary_antennas)
      .def_readwrite("p_max", &SystemConfig::p_max)
      .def_readwrite("scheme", &SystemConfig::scheme)
      .def_readwrite("gamma_th", &SystemConfig::gamma_th);

  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("errors", &ValidationReport::errors)
      .def_readonly("warnings", &ValidationReport::warnings)
      .def_readonly("notices", &ValidationReport::notices)
      .def("ok", &ValidationReport::ok);

  m.def("db_to_linear", &db_to_linear, py::arg("value_db"));
  m.def("linear_to_db", &linear_to_db, py::arg("value_linear"));
  m.def("effective_noise", &effective_noise, py::arg("hop"));
  m.def("sndr_ceiling", &sndr_ceiling, py::arg("hop"));
  m.def("validate_config", &validate, py::arg("cfg"));

  m.def("ln_gamma", &specfun::ln_gamma, py::arg("a"));
  m.def("reg_lower_gamma", &specfun::reg_lower_gamma, py::arg("a"),
        py::arg("x"));
  m.def("reg_upper_gamma", &specfun::reg_upper_gamma, py::arg("a"),
        py::arg("x"));
  m.def("erlang_cdf", &specfun::erlang_cdf, py::arg("n"), py::arg("x"));

  m.def("gain_cdf_direct", &analytic::gain_cdf_direct, py::arg("z"),
        py::arg("m"), py::arg("n"), py::arg("mean_gain"), py::arg("scheme"));
  m.def("hop_sndr_cdf", &analytic::hop_sndr_cdf, py::arg("gamma"),
        py::arg("hop"), py::arg("t_p"), py::arg("p_max"), py::arg("scheme"));
  m.def("hop_sndr_cdf_quadrature", &analytic::hop_sndr_cdf_quadrature,
        py::arg("gamma"), py::arg("hop"), py::arg("t_p"), py::arg("p_max"),
        py::arg("scheme"));
  m.def("e2e_outage", &analytic::e2e_outage, py::arg("gamma_th"),
        py::arg("cfg"));
  m.def("e2e_outage_quadrature", &analytic::e2e_outage_quadrature,
        py::arg("gamma_th"), py::arg("cfg"));
  m.def("single_antenna_outage", &analytic::single_antenna_outage,
        py::arg("gamma_th"), py::arg("cfg"));

  py::enum_<asymptotic::AsymptoticRegime>(m, "AsymptoticRegime")
      .value("HIGH_PMAX", asymptotic::AsymptoticRegime::HIGH_PMAX)
      .value("HIGH_PMAX_AND_GAIN",
             asymptotic::AsymptoticRegime::HIGH_PMAX_AND_GAIN);
  py::enum_<asymptotic::AsymptoticVariant>(m, "AsymptoticVariant")
      .value("Derived", asymptotic::AsymptoticVariant::Derived)
      .value("Printed", asymptotic::AsymptoticVariant::Printed);

  m.def("hop_cdf_high_pmax", &asymptotic::hop_cdf_high_pmax, py::arg("gamma"),
        py::arg("hop"), py::arg("t_p"), py::arg("scheme"),
        py::arg("variant") = asymptotic::AsymptoticVariant::Derived);
  m.def("hop_cdf_high_pmax_and_gain", &asymptotic::hop_cdf_high_pmax_and_gain,
        py::arg("gamma"), py::arg("hop"), py::arg("t_p"), py::arg("scheme"),
        py::arg("variant") = asymptotic::AsymptoticVariant::Derived);
  m.def("e2e_outage_asymptotic", &asymptotic::e2e_outage_asymptotic,
        py::arg("gamma_th"), py::arg("cfg"), py::arg("regime"),
        py::arg("variant") = asymptotic::AsymptoticVariant::Derived);
  m.def("diversity_order", &asymptotic::diversity_order, py::arg("cfg"));
  m.def("array_order", &asymptotic::array_order, py::arg("cfg"));
  m.def("mrc_sc_gain", &asymptotic::mrc_sc_gain, py::arg("t_r"),
        py::arg("t_d"));

  py::class_<mc::OutageEstimate>(m, "OutageEstimate")
      .def_readonly("estimate", &mc::OutageEstimate::estimate)
      .def_readonly("stderr", &mc::OutageEstimate::stderr_)
      .def_readonly("trials", &mc::OutageEstimate::trials)
      .def_readonly("seed", &mc::OutageEstimate::seed)
      .def_readonly("outage_count", &mc::OutageEstimate::outage_count);
  m.def("estimate_outage", &mc::estimate_outage, py::arg("cfg"),
        py::arg("trials"), py::arg("seed"), py::arg("workers") = 1,
        py::call_guard<py::gil_scoped_release>());

  py::class_<sweep::CurvePoint>(m, "CurvePoint")
      .def_readonly("curve_label", &sweep::CurvePoint::curve_label)
      .def_readonly("swept_value_db", &sweep::CurvePoint::swept_value_db)
      .def_readonly("analytic", &sweep::CurvePoint::analytic)
      .def_readonly("asymptotic", &sweep::CurvePoint::asymptotic)
      .def_readonly("mc_estimate", &sweep::CurvePoint::mc_estimate)
      .def_readonly("mc_stderr", &sweep::CurvePoint::mc_stderr)
      .def_readonly("trials", &sweep::CurvePoint::trials)
      .def_readonly("status", &sweep::CurvePoint::status);

  py::class_<sweep::SweepRange>(m, "SweepRange")
      .def(py::init<>())
      .def_readwrite("start_db", &sweep::SweepRange::start_db)
      .def_readwrite("stop_db", &sweep::SweepRange::stop_db)
      .def_readwrite("points", &sweep::SweepRange::points);

  py::class_<sweep::McSpec>(m, "McSpec")
      .def(py::init<>())
      .def_readwrite("trials", &sweep::McSpec::trials)
      .def_readwrite("seed", &sweep::McSpec::seed)
      .def_readwrite("enabled", &sweep::McSpec::enabled);

  py::class_<sweep::SweepSpec>(m, "SweepSpec")
      .def_readwrite("base", &sweep::SweepSpec::base)
      .def_readwrite("range", &sweep::SweepSpec::range)
      .def_readwrite("mc", &sweep::SweepSpec::mc);

  m.def("figure_preset", &sweep::figure_preset, py::arg("name"));
  m.def("sweep_spec_from_json", &sweep::sweep_spec_from_json,
        py::arg("json_text"));
  m.def("sweep_spec_to_json", &sweep::sweep_spec_to_json, py::arg("spec"));
  m.def(
      "run_sweep",
      [](const sweep::SweepSpec& spec, int workers, bool no_mc,
         asymptotic::AsymptoticVariant variant) {
        sweep::RunOptions opts;
        opts.workers = workers;
        opts.force_no_mc = no_mc;
        opts.variant = variant;
        return sweep::run_sweep(spec, opts);
      },
      py::arg("spec"), py::arg("workers") = 1, py::arg("no_mc") = false,
      py::arg("variant") = asymptotic::AsymptoticVariant::Derived,
      py::call_guard<py::gil_scoped_release>());
  m.def("to_csv", &sweep::to_csv, py::arg("points"));
}
