#include "biphoton/spectral.hpp"

#include <cmath>
#include <numbers>

#include "biphoton/errors.hpp"
#include "biphoton/parallel.hpp"

namespace biphoton {

double JointSpectrum::weighted_norm() const {
  // Row-major accumulation in a fixed order so the value does not depend on
  // how the matrix was filled.
  double acc = 0.0;
  for (int j = 0; j < amplitude.rows(); ++j) {
    double row = 0.0;
    for (int k = 0; k < amplitude.cols(); ++k)
      row += idler_grid.weights[k] * std::norm(amplitude(j, k));
    acc += signal_grid.weights[j] * row;
  }
  return std::sqrt(acc);
}

std::complex<double> eval_single(const PhysicalParams& params, double dws, double dwi) {
  const double s = dws + dwi;
  const double gauss = std::exp(-s * s * params.tau * params.tau / 8.0);
  return gauss / std::complex<double>(params.gamma3N / 2.0, -dwi);
}

std::complex<double> eval_multiplexed(const PhysicalParams& params, const MultiplexConfig& cfg,
                                      double dws, double dwi) {
  const double t2 = params.tau * params.tau / 8.0;
  std::complex<double> acc{0.0, 0.0};
  for (const auto& e : cfg.ensembles) {
    const double s = dws + dwi + e.dq;
    acc += e.weight * std::exp(-s * s * t2) /
           std::complex<double>(params.gamma3N / 2.0, -(dwi + e.dp));
  }
  return acc;
}

double single_term_mass(const PhysicalParams& params) {
  const double pi = std::numbers::pi;
  return 4.0 * pi * std::sqrt(pi) / (params.tau * params.gamma3N);
}

JointSpectrum build_joint_spectrum(const PhysicalParams& params, const MultiplexConfig& cfg,
                                   const FrequencyGrid& signal_grid, const FrequencyGrid& idler_grid,
                                   bool normalize, int threads) {
  params.validate();
  cfg.validate();
  signal_grid.validate();
  idler_grid.validate();

  JointSpectrum js;
  js.signal_grid = signal_grid;
  js.idler_grid = idler_grid;
  const int ns = signal_grid.size();
  const int ni = idler_grid.size();
  js.amplitude.resize(ns, ni);

  parallel_for(ns, threads, [&](std::size_t j) {
    const double dws = signal_grid.nodes[j];
    for (int k = 0; k < ni; ++k)
      js.amplitude(j, k) = eval_multiplexed(params, cfg, dws, idler_grid.nodes[k]);
  });

  if (normalize) {
    const double norm = js.weighted_norm();
    // Incoherent whole-line estimate of what the mass should be; a windowed
    // mass many orders below it means the shifts left the grid.
    double expected = 0.0;
    for (const auto& e : cfg.ensembles) expected += std::norm(e.weight) * single_term_mass(params);
    if (!(norm * norm > 1e-6 * expected))
      throw NormIsZero("joint spectrum mass underflows on the grid; window does not cover the shifts");
    js.amplitude /= norm;
    js.normalized = true;
  }
  return js;
}

}  // namespace biphoton
