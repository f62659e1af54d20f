#include "biphoton/dynamics.hpp"

#include <cmath>
#include <numbers>

#include "biphoton/errors.hpp"
#include "biphoton/spectral.hpp"

namespace biphoton {

namespace {

constexpr double kPi = std::numbers::pi;
using cd = std::complex<double>;

struct State3 {
  cd e, a, b;
};

State3 operator+(State3 x, State3 y) { return {x.e + y.e, x.a + y.a, x.b + y.b}; }
State3 operator*(double s, State3 x) { return {s * x.e, s * x.a, s * x.b}; }

}  // namespace

bool DriveParams::adiabatic_ok() const {
  return std::abs(delta1) * tau * std::sqrt(kPi) / omega_a_area >= 50.0;
}

cd DriveParams::b_of_t(double t) const {
  const double oa = omega_a_area * std::exp(-t * t / (tau * tau)) / (std::sqrt(kPi) * tau);
  const double ob = omega_b_area * std::exp(-t * t / (tau * tau)) / (std::sqrt(kPi) * tau);
  return cd{oa * ob / (4.0 * delta1 * delta2), 0.0};
}

void DriveParams::validate() const {
  if (!(tau > 0.0)) throw std::invalid_argument("drive: tau must be > 0");
  if (delta1 == 0.0 || delta2 == 0.0) throw std::invalid_argument("drive: detunings must be nonzero");
  if (omega_a_area < 0.0 || omega_b_area < 0.0)
    throw std::invalid_argument("drive: pulse areas must be >= 0");
}

AmplitudeTrajectory integrate_amplitudes(const DriveParams& drive, double t0, double t1, double dt) {
  drive.validate();
  if (!(t1 > t0) || !(dt > 0.0)) throw std::invalid_argument("integrate_amplitudes: bad time span");
  const double dmax = std::max(std::abs(drive.delta1), std::abs(drive.delta2));
  if (dt > drive.tau / 10.0 || dt * dmax > 0.5)
    throw StepTooCoarse("dt must resolve both tau and 1/|delta|");

  const double norm_a = 1.0 / (std::sqrt(kPi) * drive.tau);
  auto omega_a = [&](double t) { return drive.omega_a_area * norm_a * std::exp(-t * t / (drive.tau * drive.tau)); };
  auto omega_b = [&](double t) { return drive.omega_b_area * norm_a * std::exp(-t * t / (drive.tau * drive.tau)); };

  const cd I{0.0, 1.0};
  auto deriv = [&](double t, const State3& s) -> State3 {
    const double oa = omega_a(t), ob = omega_b(t);
    State3 d;
    d.e = I * (oa / 2.0) * s.a;
    d.a = I * ((oa / 2.0) * s.e + (ob / 2.0) * s.b + drive.delta1 * s.a);
    d.b = I * ((ob / 2.0) * s.a + drive.delta2 * s.b);
    return d;
  };

  const int steps = static_cast<int>(std::ceil((t1 - t0) / dt));
  const double h = (t1 - t0) / steps;

  AmplitudeTrajectory traj;
  traj.t.reserve(steps + 1);
  traj.ground.reserve(steps + 1);
  traj.intermediate.reserve(steps + 1);
  traj.upper.reserve(steps + 1);

  State3 s{cd{1.0, 0.0}, cd{0.0, 0.0}, cd{0.0, 0.0}};
  double t = t0;
  auto record = [&](double tt, const State3& ss) {
    traj.t.push_back(tt);
    traj.ground.push_back(ss.e);
    traj.intermediate.push_back(ss.a);
    traj.upper.push_back(ss.b);
    const double norm2 = std::norm(ss.e) + std::norm(ss.a) + std::norm(ss.b);
    traj.max_norm_drift = std::max(traj.max_norm_drift, std::abs(norm2 - 1.0));
  };
  record(t, s);

  for (int i = 0; i < steps; ++i) {
    const State3 k1 = deriv(t, s);
    const State3 k2 = deriv(t + h / 2.0, s + (h / 2.0) * k1);
    const State3 k3 = deriv(t + h / 2.0, s + (h / 2.0) * k2);
    const State3 k4 = deriv(t + h, s + h * k3);
    s = s + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t = t0 + (i + 1) * h;
    record(t, s);
  }

  if (traj.max_norm_drift > 1e-6 * (t1 - t0))
    throw StepTooCoarse("norm drift exceeded 1e-6 per unit time; reduce dt");
  return traj;
}

std::complex<double> dsi_numeric(const PhysicalParams& params, const DriveParams& drive,
                                 double dws, double dwi, double t0, double t_final, double dt) {
  params.validate();
  drive.validate();
  const double gh = params.gamma3N / 2.0;
  if (t0 == 0.0) t0 = -6.0 * drive.tau;
  // Default window runs until the decay envelope reaches 1e-12 so the
  // truncated tail stays below the corner values of the detuning plane.
  if (t_final <= 0.0) t_final = std::log(1e12) / gh;

  if (t0 > -6.0 * drive.tau + 1e-12)
    throw WindowTooShort("window must start at or before -6 tau");
  if (std::exp(-gh * t_final) > 1e-8)
    throw WindowTooShort("window must extend until the decay envelope is below 1e-8");
  if (dt > drive.tau / 10.0 || dt * (std::abs(dws) + std::abs(dwi) + params.gamma3N) > 0.5)
    throw StepTooCoarse("dt must resolve the pulse and the detuning phases");

  // March the nested integrals as an ODE system:
  //   H'(t) = b(t) e^{(i dws + gh) t},  G'(t) = e^{(i dwi - gh) t} H(t),
  // so G(t_final) is the double integral. The Gaussian in b defeats the
  // growing exponential inside H, so nothing overflows.
  const cd eps{gh, dws};   // exponent of the inner integrand, times t
  const cd eta{-gh, dwi};  // exponent of the outer integrand, times t

  auto inner = [&](double t) -> cd { return drive.b_of_t(t) * std::exp(eps * t); };

  const int steps = static_cast<int>(std::ceil((t_final - t0) / dt));
  const double h = (t_final - t0) / steps;

  cd H{0.0, 0.0}, G{0.0, 0.0};
  for (int i = 0; i < steps; ++i) {
    const double t = t0 + i * h;
    const double tm = t + h / 2.0;
    const double tp = t + h;
    const cd f_t = inner(t), f_m = inner(tm), f_p = inner(tp);
    const cd g_t = std::exp(eta * t), g_m = std::exp(eta * tm), g_p = std::exp(eta * tp);

    // RK4 on (H, G); H' has no state dependence, G' is linear in H.
    const cd kH1 = f_t;
    const cd kG1 = g_t * H;
    const cd kH2 = f_m;
    const cd kG2 = g_m * (H + 0.5 * h * kH1);
    const cd kH3 = f_m;
    const cd kG3 = g_m * (H + 0.5 * h * kH2);
    const cd kH4 = f_p;
    const cd kG4 = g_p * (H + h * kH3);
    H += h / 6.0 * (kH1 + 2.0 * kH2 + 2.0 * kH3 + kH4);
    G += h / 6.0 * (kG1 + 2.0 * kG2 + 2.0 * kG3 + kG4);
  }
  return G;
}

std::complex<double> dsi_closed_form(const PhysicalParams& params, const DriveParams& drive,
                                     double dws, double dwi) {
  const double prefactor = drive.omega_a_area * drive.omega_b_area /
                           (4.0 * drive.delta1 * drive.delta2 * std::sqrt(2.0 * kPi) * drive.tau);
  PhysicalParams p = params;
  p.tau = drive.tau;
  return prefactor * eval_single(p, dws, dwi);
}

}  // namespace biphoton
