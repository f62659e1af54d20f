#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace biphoton {

// Unit convention: gamma3 = 1 internally, so every frequency is expressed in
// units of gamma3 and every time in 1/gamma3.
struct PhysicalParams {
  double gamma3N = 5.0;  // superradiant decay rate, >= gamma3
  double tau = 0.25;     // Gaussian pump pulse width
  double gamma3 = 1.0;   // intrinsic decay rate; the frequency unit

  // Overall pair-generation prefactor. Metadata only: spectral shapes and all
  // entanglement metrics are invariant to it.
  double generation_amplitude = 1.0;

  void validate() const {
    if (!(gamma3 > 0.0)) throw std::invalid_argument("gamma3 must be > 0");
    if (!(gamma3N >= gamma3)) throw std::invalid_argument("gamma3N must be >= gamma3");
    if (!(tau > 0.0)) throw std::invalid_argument("tau must be > 0");
  }
};

// One multiplexed ensemble: dp shifts the idler Lorentzian, dq shifts the
// energy-conserving Gaussian ridge. All ensembles are driven in common, so
// the per-term weight stays at 1 unless deliberately engineered.
struct EnsembleShift {
  double dp = 0.0;
  double dq = 0.0;
  std::complex<double> weight{1.0, 0.0};
};

struct MultiplexConfig {
  std::vector<EnsembleShift> ensembles;

  std::size_t size() const { return ensembles.size(); }

  void validate() const {
    if (ensembles.empty()) throw std::invalid_argument("need at least one ensemble");
    for (const auto& e : ensembles) {
      if (!std::isfinite(e.dp) || !std::isfinite(e.dq) || !std::isfinite(e.weight.real()) ||
          !std::isfinite(e.weight.imag()))
        throw std::invalid_argument("ensemble shifts and weights must be finite");
    }
  }

  static MultiplexConfig single() { return MultiplexConfig{{EnsembleShift{}}}; }
};

}  // namespace biphoton
