#include "biphoton/verify.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "biphoton/parallel.hpp"
#include "biphoton/schmidt.hpp"
#include "biphoton/spectral.hpp"

namespace biphoton {

namespace {

void add(VerifyReport& rep, const std::string& name, double value, double tol) {
  rep.checks.push_back({name, value, tol, value < tol});
}

}  // namespace

VerifyReport run_verification(const PhysicalParams& params, const DriveParams& drive,
                              const MultiplexConfig& cfg, const GridSpec& grid, double dyn_dt,
                              int threads) {
  VerifyReport rep;

  // Time-domain integral vs closed form on an 11x11 detuning grid, both
  // normalized to unit maximum.
  {
    const int n = 11;
    const double lo = -20.0, hi = 20.0;
    Eigen::MatrixXd numeric(n, n), closed(n, n);
    parallel_for(n, threads, [&](std::size_t j) {
      const double dws = lo + (hi - lo) * j / (n - 1);
      for (int k = 0; k < n; ++k) {
        const double dwi = lo + (hi - lo) * k / (n - 1);
        numeric(j, k) = std::abs(dsi_numeric(params, drive, dws, dwi, 0.0, 0.0, dyn_dt));
        closed(j, k) = std::abs(dsi_closed_form(params, drive, dws, dwi));
      }
    });
    numeric /= numeric.maxCoeff();
    closed /= closed.maxCoeff();
    const double linf = (numeric - closed).cwiseAbs().maxCoeff();
    rep.max_oracle_deviation = linf;
    add(rep, "oracle_spectrum_linf", linf, 1e-5);

    const std::complex<double> d00 = dsi_numeric(params, drive, 0.0, 0.0, 0.0, 0.0, dyn_dt);
    const std::complex<double> c00 = dsi_closed_form(params, drive, 0.0, 0.0);
    add(rep, "oracle_point_origin_rel", std::abs(d00 - c00) / std::abs(c00), 1e-6);
  }

  // Adiabatic tracking of the upper amplitude and ground-state depletion.
  {
    const double span = 6.0 * drive.tau;
    const auto traj = integrate_amplitudes(drive, -span, span, dyn_dt);
    double bmax = 0.0, dev = 0.0, min_ground = 1.0;
    for (std::size_t i = 0; i < traj.t.size(); ++i) {
      bmax = std::max(bmax, std::abs(traj.upper[i]));
      dev = std::max(dev, std::abs(traj.upper[i] - drive.b_of_t(traj.t[i])));
      min_ground = std::min(min_ground, std::norm(traj.ground[i]));
    }
    add(rep, "adiabatic_upper_tracking", dev / bmax, 0.05);
    add(rep, "ground_state_depletion", 1.0 - min_ground, 0.01);
    add(rep, "trajectory_norm_drift", traj.max_norm_drift, 1e-6);
  }

  // Pointwise amplitude identities on a coarse probe lattice.
  {
    double lin_dev = 0.0, trans_dev = 0.0;
    MultiplexConfig head, tail;
    const std::size_t half = (cfg.size() + 1) / 2;
    for (std::size_t m = 0; m < cfg.size(); ++m)
      (m < half ? head : tail).ensembles.push_back(cfg.ensembles[m]);
    MultiplexConfig shifted = cfg;
    const double c = 7.0;
    for (auto& e : shifted.ensembles) {
      e.dp += c;
      e.dq += c;
    }
    for (int j = 0; j < 9; ++j)
      for (int k = 0; k < 9; ++k) {
        const double dws = grid.lo + (grid.hi - grid.lo) * j / 8.0;
        const double dwi = grid.lo + (grid.hi - grid.lo) * k / 8.0;
        const auto whole = eval_multiplexed(params, cfg, dws, dwi);
        auto parts = eval_multiplexed(params, head, dws, dwi);
        if (!tail.ensembles.empty()) parts += eval_multiplexed(params, tail, dws, dwi);
        lin_dev = std::max(lin_dev, std::abs(whole - parts));
        trans_dev = std::max(trans_dev, std::abs(eval_multiplexed(params, shifted, dws, dwi) -
                                                 eval_multiplexed(params, cfg, dws, dwi + c)));
      }
    add(rep, "amplitude_linearity", lin_dev, 1e-12);
    add(rep, "amplitude_translation_covariance", trans_dev, 1e-12);
  }

  // Decomposition invariants on the configured spectrum.
  {
    const FrequencyGrid g = grid.make();
    const JointSpectrum js = build_joint_spectrum(params, cfg, g, g, true, threads);
    const SchmidtResult res = decompose(js);
    add(rep, "schmidt_sum_lambda", std::abs(res.eigenvalues.sum() + res.tail_mass - 1.0), 1e-10);

    double ortho = 0.0;
    const int probe = std::min<int>(12, static_cast<int>(res.eigenvalues.size()));
    for (int a = 0; a < probe; ++a)
      for (int b = 0; b < probe; ++b) {
        std::complex<double> ss{0.0, 0.0}, ii{0.0, 0.0};
        for (int j = 0; j < g.size(); ++j) {
          ss += g.weights[j] * std::conj(res.signal_modes(j, a)) * res.signal_modes(j, b);
          ii += g.weights[j] * std::conj(res.idler_modes(j, a)) * res.idler_modes(j, b);
        }
        const double delta = a == b ? 1.0 : 0.0;
        ortho = std::max({ortho, std::abs(ss - delta), std::abs(ii - delta)});
      }
    add(rep, "schmidt_mode_orthonormality", ortho, 1e-8);
    add(rep, "schmidt_reconstruction_full_rank", res.reconstruction_error, 1e-8);

    // Same spectrum from both one-photon kernels.
    Eigen::VectorXd sqw(g.size());
    for (int j = 0; j < g.size(); ++j) sqw(j) = std::sqrt(g.weights[j]);
    const Eigen::MatrixXcd M = sqw.asDiagonal() * js.amplitude * sqw.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es1(M * M.adjoint(), Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es2(M.adjoint() * M, Eigen::EigenvaluesOnly);
    auto entropy_of = [](const Eigen::VectorXd& lam) {
      double s = 0.0;
      for (int i = 0; i < lam.size(); ++i)
        if (lam(i) > kEigenvalueFloor) s -= lam(i) * std::log2(lam(i));
      return s;
    };
    add(rep, "kernel_side_entropy_agreement",
        std::abs(entropy_of(es1.eigenvalues()) - entropy_of(es2.eigenvalues())), 1e-8);
  }

  rep.pass = true;
  for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
  return rep;
}

}  // namespace biphoton
