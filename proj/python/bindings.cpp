#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "biphoton/dynamics.hpp"
#include "biphoton/grid.hpp"
#include "biphoton/io.hpp"
#include "biphoton/params.hpp"
#include "biphoton/schmidt.hpp"
#include "biphoton/spectral.hpp"
#include "biphoton/sweep.hpp"
#include "biphoton/timedomain.hpp"
#include "biphoton/verify.hpp"

namespace py = pybind11;
using namespace biphoton;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Joint-spectrum shaping and Schmidt-mode analysis of multiplexed cascade emission";

  py::class_<PhysicalParams>(m, "PhysicalParams")
      .def(py::init<>())
      .def_readwrite("gamma3N", &PhysicalParams::gamma3N)
      .def_readwrite("tau", &PhysicalParams::tau)
      .def_readwrite("gamma3", &PhysicalParams::gamma3)
      .def_readwrite("generation_amplitude", &PhysicalParams::generation_amplitude)
      .def("validate", &PhysicalParams::validate);

  py::class_<EnsembleShift>(m, "EnsembleShift")
      .def(py::init<>())
      .def(py::init([](double dp, double dq, std::complex<double> weight) {
             return EnsembleShift{dp, dq, weight};
           }),
           py::arg("dp"), py::arg("dq") = 0.0, py::arg("weight") = std::complex<double>(1.0, 0.0))
      .def_readwrite("dp", &EnsembleShift::dp)
      .def_readwrite("dq", &EnsembleShift::dq)
      .def_readwrite("weight", &EnsembleShift::weight);

  py::class_<MultiplexConfig>(m, "MultiplexConfig")
      .def(py::init<>())
      .def(py::init([](const std::vector<std::pair<double, double>>& shifts) {
             MultiplexConfig cfg;
             for (auto& [dp, dq] : shifts) cfg.ensembles.push_back({dp, dq});
             return cfg;
           }),
           py::arg("shifts"))
      .def_readwrite("ensembles", &MultiplexConfig::ensembles)
      .def("__len__", &MultiplexConfig::size)
      .def("validate", &MultiplexConfig::validate)
      .def_static("single", &MultiplexConfig::single);

  py::class_<FrequencyGrid>(m, "FrequencyGrid")
      .def_readonly("lo", &FrequencyGrid::lo)
      .def_readonly("hi", &FrequencyGrid::hi)
      .def_readonly("nodes", &FrequencyGrid::nodes)
      .def_readonly("weights", &FrequencyGrid::weights)
      .def("__len__", &FrequencyGrid::size)
      .def("validate", &FrequencyGrid::validate);

  m.def("make_uniform_grid", &make_uniform_grid, py::arg("lo"), py::arg("hi"), py::arg("n"));
  m.def("make_gauss_legendre_grid", &make_gauss_legendre_grid, py::arg("lo"), py::arg("hi"),
        py::arg("n"), py::arg("panel_order") = 8);

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init<>())
      .def(py::init([](double lo, double hi, int n) {
             return GridSpec{lo, hi, n};
           }),
           py::arg("lo"), py::arg("hi"), py::arg("n"))
      .def_readwrite("lo", &GridSpec::lo)
      .def_readwrite("hi", &GridSpec::hi)
      .def_readwrite("n", &GridSpec::n)
      .def("make", &GridSpec::make);

  py::class_<JointSpectrum>(m, "JointSpectrum")
      .def_readonly("signal_grid", &JointSpectrum::signal_grid)
      .def_readonly("idler_grid", &JointSpectrum::idler_grid)
      .def_readonly("amplitude", &JointSpectrum::amplitude)
      .def_readonly("normalized", &JointSpectrum::normalized)
      .def("weighted_norm", &JointSpectrum::weighted_norm);

  m.def("eval_single", &eval_single, py::arg("params"), py::arg("dws"), py::arg("dwi"));
  m.def("eval_multiplexed", &eval_multiplexed, py::arg("params"), py::arg("config"),
        py::arg("dws"), py::arg("dwi"));
  m.def("build_joint_spectrum", &build_joint_spectrum, py::arg("params"), py::arg("config"),
        py::arg("signal_grid"), py::arg("idler_grid"), py::arg("normalize") = true,
        py::arg("threads") = 1);

  py::class_<DegeneratePair>(m, "DegeneratePair")
      .def_readonly("first", &DegeneratePair::first)
      .def_readonly("second", &DegeneratePair::second)
      .def_readonly("rel_gap", &DegeneratePair::rel_gap);

  py::class_<SchmidtResult>(m, "SchmidtResult")
      .def_readonly("eigenvalues", &SchmidtResult::eigenvalues)
      .def_readonly("signal_modes", &SchmidtResult::signal_modes)
      .def_readonly("idler_modes", &SchmidtResult::idler_modes)
      .def_readonly("entropy_bits", &SchmidtResult::entropy_bits)
      .def_readonly("schmidt_number", &SchmidtResult::schmidt_number)
      .def_readonly("pairs", &SchmidtResult::pairs)
      .def_readonly("reconstruction_error", &SchmidtResult::reconstruction_error)
      .def_readonly("tail_mass", &SchmidtResult::tail_mass);

  m.def("decompose", &decompose, py::arg("joint_spectrum"), py::arg("rank") = 0);
  m.def("schmidt_eigenvalues", &schmidt_eigenvalues, py::arg("joint_spectrum"));
  m.def(
      "entropy_bits",
      [](const std::vector<double>& lam) { return entropy_bits({lam.data(), lam.size()}); },
      py::arg("eigenvalues"));
  m.def(
      "schmidt_number",
      [](const std::vector<double>& lam) { return schmidt_number({lam.data(), lam.size()}); },
      py::arg("eigenvalues"));
  m.def(
      "pair_degeneracies",
      [](const std::vector<double>& lam, double rel_tol) {
        return pair_degeneracies({lam.data(), lam.size()}, rel_tol);
      },
      py::arg("eigenvalues"), py::arg("rel_tol") = kDegeneracyTol);
  m.def("density_overlap", &density_overlap, py::arg("modes"), py::arg("grid"), py::arg("a"),
        py::arg("b"));

  py::class_<TimeWindow>(m, "TimeWindow")
      .def(py::init<>())
      .def(py::init([](double t_lo, double t_hi, int n_t) {
             return TimeWindow{t_lo, t_hi, n_t};
           }),
           py::arg("t_lo"), py::arg("t_hi"), py::arg("n_t"))
      .def_readwrite("t_lo", &TimeWindow::t_lo)
      .def_readwrite("t_hi", &TimeWindow::t_hi)
      .def_readwrite("n_t", &TimeWindow::n_t);

  py::class_<TimeModes>(m, "TimeModes")
      .def_readonly("time_grid", &TimeModes::time_grid)
      .def_readonly("modes", &TimeModes::modes)
      .def_readonly("dt", &TimeModes::dt);

  m.def("default_time_window", &default_time_window, py::arg("params"), py::arg("grid"));
  m.def("to_time", &to_time, py::arg("freq_modes"), py::arg("grid"), py::arg("window"),
        py::arg("threads") = 1);
  m.def("to_frequency", &to_frequency, py::arg("time_modes"), py::arg("grid"),
        py::arg("threads") = 1);
  m.def("dominant_period", &dominant_period, py::arg("time_modes"), py::arg("mode"),
        py::arg("rel_peak_floor") = 1e-2);
  m.def("tail_decay_rate", &tail_decay_rate, py::arg("time_modes"), py::arg("mode"),
        py::arg("hi_frac") = 1e-2, py::arg("lo_frac") = 1e-6);

  py::class_<DriveParams>(m, "DriveParams")
      .def(py::init<>())
      .def_readwrite("omega_a_area", &DriveParams::omega_a_area)
      .def_readwrite("omega_b_area", &DriveParams::omega_b_area)
      .def_readwrite("delta1", &DriveParams::delta1)
      .def_readwrite("delta2", &DriveParams::delta2)
      .def_readwrite("tau", &DriveParams::tau)
      .def("adiabatic_ok", &DriveParams::adiabatic_ok)
      .def("b_of_t", &DriveParams::b_of_t, py::arg("t"));

  py::class_<AmplitudeTrajectory>(m, "AmplitudeTrajectory")
      .def_readonly("t", &AmplitudeTrajectory::t)
      .def_readonly("ground", &AmplitudeTrajectory::ground)
      .def_readonly("intermediate", &AmplitudeTrajectory::intermediate)
      .def_readonly("upper", &AmplitudeTrajectory::upper)
      .def_readonly("max_norm_drift", &AmplitudeTrajectory::max_norm_drift);

  m.def("integrate_amplitudes", &integrate_amplitudes, py::arg("drive"), py::arg("t0"),
        py::arg("t1"), py::arg("dt"));
  m.def("dsi_numeric", &dsi_numeric, py::arg("params"), py::arg("drive"), py::arg("dws"),
        py::arg("dwi"), py::arg("t0") = 0.0, py::arg("t_final") = 0.0, py::arg("dt") = 2.5e-4);
  m.def("dsi_closed_form", &dsi_closed_form, py::arg("params"), py::arg("drive"), py::arg("dws"),
        py::arg("dwi"));

  py::enum_<ShiftFamily>(m, "ShiftFamily")
      .value("symmetric", ShiftFamily::symmetric)
      .value("nonsymmetric", ShiftFamily::nonsymmetric);

  m.def("family_config", &family_config, py::arg("family"), py::arg("n_mp"), py::arg("dp1"));
  m.def("config_in_window", &config_in_window, py::arg("params"), py::arg("config"),
        py::arg("grid"));

  py::class_<SweepSpec>(m, "SweepSpec")
      .def(py::init<>())
      .def_readwrite("params", &SweepSpec::params)
      .def_readwrite("grid", &SweepSpec::grid)
      .def_readwrite("family", &SweepSpec::family)
      .def_readwrite("n_mp", &SweepSpec::n_mp)
      .def_readwrite("dp1_start", &SweepSpec::dp1_start)
      .def_readwrite("dp1_stop", &SweepSpec::dp1_stop)
      .def_readwrite("steps", &SweepSpec::steps);

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("dp1", &SweepRow::dp1)
      .def_readonly("entropy_bits", &SweepRow::entropy_bits)
      .def_readonly("schmidt_number", &SweepRow::schmidt_number)
      .def_readonly("lambdas", &SweepRow::lambdas)
      .def_readonly("in_window", &SweepRow::in_window);

  m.def("run_sweep", &run_sweep, py::arg("spec"), py::arg("threads") = 1);

  py::class_<EntropyOptimum>(m, "EntropyOptimum")
      .def_readonly("config", &EntropyOptimum::config)
      .def_readonly("free_shifts", &EntropyOptimum::free_shifts)
      .def_readonly("entropy_bits", &EntropyOptimum::entropy_bits)
      .def_readonly("schmidt_number", &EntropyOptimum::schmidt_number)
      .def_readonly("evaluations", &EntropyOptimum::evaluations);

  m.def("maximize_entropy", &maximize_entropy, py::arg("params"), py::arg("grid"),
        py::arg("family"), py::arg("n_mp"), py::arg("dp1_lo"), py::arg("dp1_hi"),
        py::arg("rounds") = 2, py::arg("tol") = 0.5, py::arg("threads") = 1);

  py::class_<ScalingFit>(m, "ScalingFit")
      .def_readonly("n_mp", &ScalingFit::n_mp)
      .def_readonly("s_max", &ScalingFit::s_max)
      .def_readonly("k_max", &ScalingFit::k_max)
      .def_readonly("s_excess", &ScalingFit::s_excess)
      .def_readonly("k_slope", &ScalingFit::k_slope)
      .def_readonly("k_intercept", &ScalingFit::k_intercept)
      .def_readonly("k_rel_residual", &ScalingFit::k_rel_residual);

  m.def("fit_scaling", &fit_scaling, py::arg("n_mp"), py::arg("s_max"), py::arg("k_max"));

  py::class_<VerifyCheck>(m, "VerifyCheck")
      .def_readonly("name", &VerifyCheck::name)
      .def_readonly("value", &VerifyCheck::value)
      .def_readonly("tolerance", &VerifyCheck::tolerance)
      .def_readonly("pass_", &VerifyCheck::pass);

  py::class_<VerifyReport>(m, "VerifyReport")
      .def_readonly("checks", &VerifyReport::checks)
      .def_readonly("max_oracle_deviation", &VerifyReport::max_oracle_deviation)
      .def_readonly("pass_", &VerifyReport::pass);

  m.def("run_verification", &run_verification, py::arg("params"), py::arg("drive"),
        py::arg("config"), py::arg("grid"), py::arg("dyn_dt") = 2.5e-4, py::arg("threads") = 1);
}
