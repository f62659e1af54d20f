#pragma once

#include <Eigen/Core>
#include <complex>

#include "biphoton/grid.hpp"
#include "biphoton/params.hpp"

namespace biphoton {

// Joint spectral amplitude sampled on a signal x idler detuning grid.
// amplitude(j, k) = f(signal_grid.nodes[j], idler_grid.nodes[k]).
struct JointSpectrum {
  FrequencyGrid signal_grid;
  FrequencyGrid idler_grid;
  Eigen::MatrixXcd amplitude;
  bool normalized = false;

  // sqrt of the quadrature L2 mass, sum_jk ws_j wi_k |a_jk|^2.
  double weighted_norm() const;
};

// Single-ensemble amplitude: a Gaussian that conserves the summed detuning
// within 1/tau, modulated by the superradiant idler Lorentzian,
//   exp(-(dws + dwi)^2 tau^2 / 8) / (gamma3N/2 - i dwi).
// Unnormalized; entire in both arguments.
std::complex<double> eval_single(const PhysicalParams& params, double dws, double dwi);

// Multiplexed amplitude: coherent sum of per-ensemble terms with the
// Lorentzian shifted by dp_m and the Gaussian ridge shifted by dq_m.
// Reduces exactly to eval_single for one ensemble with zero shifts.
std::complex<double> eval_multiplexed(const PhysicalParams& params, const MultiplexConfig& cfg,
                                      double dws, double dwi);

// Samples eval_multiplexed on the grid product. With normalize set, rescales
// so the weighted L2 norm is 1 (all entanglement metrics are invariant to the
// global scale, and the Schmidt spectrum then sums to 1). Throws NormIsZero
// when the windowed mass collapses relative to the analytic whole-line
// estimate, i.e. the shifts put the spectrum outside the grid.
// Row-parallel; the result is bitwise independent of `threads`.
JointSpectrum build_joint_spectrum(const PhysicalParams& params, const MultiplexConfig& cfg,
                                   const FrequencyGrid& signal_grid, const FrequencyGrid& idler_grid,
                                   bool normalize = true, int threads = 1);

// Whole-line L2 mass of one unit-weight term, 4 pi^{3/2} / (tau * gamma3N).
// Reference scale for the NormIsZero guard.
double single_term_mass(const PhysicalParams& params);

}  // namespace biphoton
