#pragma once

#include <complex>
#include <vector>

#include "biphoton/params.hpp"

namespace biphoton {

// Drive for the three-level excitation chain. Pulses are normalized Gaussians
// Omega(t) = area * exp(-t^2/tau^2) / (sqrt(pi) tau), detunings in gamma3 units.
struct DriveParams {
  double omega_a_area = 0.1;
  double omega_b_area = 0.1;
  double delta1 = 200.0;
  double delta2 = 200.0;
  double tau = 0.25;

  // Far-detuned validity indicator, |delta1| tau sqrt(pi) / area_a >= 50.
  // Recorded, not enforced.
  bool adiabatic_ok() const;

  // Instantaneous two-photon amplitude b(t) = Omega_a Omega_b / (4 delta1 delta2).
  std::complex<double> b_of_t(double t) const;

  void validate() const;
};

// Collective-mode amplitudes of ground / intermediate / upper states under
// the Gaussian drives (single symmetric mode, photon continuum excluded, so
// the norm is conserved).
struct AmplitudeTrajectory {
  std::vector<double> t;
  std::vector<std::complex<double>> ground;        // E
  std::vector<std::complex<double>> intermediate;  // A
  std::vector<std::complex<double>> upper;         // B
  double max_norm_drift = 0.0;
};

// Fixed-step RK4 on the coupled linear equations
//   i dE/dt = -(Oa*/2) A
//   i dA/dt = -(Oa/2) E - (Ob*/2) B - delta1 A
//   i dB/dt = -(Ob/2) A - delta2 B
// from E(t0) = 1. Throws StepTooCoarse when dt cannot resolve tau or the
// detunings, or when the norm drifts more than 1e-6 per unit time.
AmplitudeTrajectory integrate_amplitudes(const DriveParams& drive, double t0, double t1, double dt);

// Numerical double time integral for the pair amplitude,
//   D(dws, dwi) = int dt' int_{-inf}^{t'} dt'' b(t'') e^{i dwi t'} e^{i dws t''}
//                 e^{-(gamma3N/2)(t' - t'')},
// evaluated as two coupled cumulative integrals marched by RK4. Independent
// of the closed-form route; collective decay enters only through gamma3N.
// t0/t_final <= 0 pick defaults (-6 tau and the 1e-8 decay point). Throws
// WindowTooShort / StepTooCoarse.
std::complex<double> dsi_numeric(const PhysicalParams& params, const DriveParams& drive,
                                 double dws, double dwi, double t0 = 0.0, double t_final = 0.0,
                                 double dt = 2.5e-4);

// Closed-form counterpart: the analytic prefactor times the spectral function.
std::complex<double> dsi_closed_form(const PhysicalParams& params, const DriveParams& drive,
                                     double dws, double dwi);

}  // namespace biphoton
