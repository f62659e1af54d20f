#include "biphoton/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "biphoton/errors.hpp"
#include "biphoton/parallel.hpp"
#include "biphoton/schmidt.hpp"
#include "biphoton/spectral.hpp"

namespace biphoton {

namespace {

// Pair positions for the centered lattice: {c * dp1} with c = 1, 3, 5, ...
// for even counts and c = 1, 2, 3, ... (plus the 0 point) for odd counts.
std::vector<double> lattice_positions(int n_mp, double dp1) {
  std::vector<double> pos;
  const int pairs = n_mp / 2;
  for (int k = 1; k <= pairs; ++k) pos.push_back((n_mp % 2 == 0 ? 2 * k - 1 : k) * dp1);
  return pos;
}

MultiplexConfig config_from_positions(ShiftFamily family, int n_mp, const std::vector<double>& pos) {
  MultiplexConfig cfg;
  for (double d : pos) {
    const double dq = family == ShiftFamily::nonsymmetric ? d : 0.0;
    cfg.ensembles.push_back({d, dq});
    cfg.ensembles.push_back({-d, family == ShiftFamily::nonsymmetric ? -d : 0.0});
  }
  if (n_mp % 2 == 1) cfg.ensembles.push_back({0.0, 0.0});
  return cfg;
}

double entropy_objective(const PhysicalParams& params, const GridSpec& grid,
                         const MultiplexConfig& cfg, double* k_out) {
  const FrequencyGrid g = grid.make();
  const JointSpectrum js = build_joint_spectrum(params, cfg, g, g, true);
  const Eigen::VectorXd lam = schmidt_eigenvalues(js);
  std::vector<double> l;
  l.reserve(lam.size());
  for (int i = 0; i < lam.size(); ++i)
    if (lam(i) > kEigenvalueFloor) l.push_back(lam(i));
  if (k_out) *k_out = schmidt_number(l);
  return entropy_bits(l);
}

}  // namespace

MultiplexConfig family_config(ShiftFamily family, int n_mp, double dp1) {
  if (n_mp < 1) throw std::invalid_argument("family_config: n_mp must be >= 1");
  if (n_mp == 1) {
    MultiplexConfig cfg;
    cfg.ensembles.push_back({0.0, 0.0});
    return cfg;
  }
  return config_from_positions(family, n_mp, lattice_positions(n_mp, dp1));
}

double window_margin(const PhysicalParams& params) {
  return std::max(4.0 / params.tau, 4.0 * params.gamma3N);
}

bool config_in_window(const PhysicalParams& params, const MultiplexConfig& cfg, const GridSpec& grid) {
  const double margin = window_margin(params);
  for (const auto& e : cfg.ensembles) {
    if (-e.dp - margin < grid.lo || -e.dp + margin > grid.hi) return false;          // Lorentzian peak
    if (e.dp - e.dq - margin < grid.lo || e.dp - e.dq + margin > grid.hi) return false;  // ridge crossing
  }
  return true;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int threads) {
  if (spec.steps < 1) throw std::invalid_argument("run_sweep: need at least one step");
  if (!(spec.dp1_stop >= spec.dp1_start)) throw std::invalid_argument("run_sweep: bad dp1 range");
  spec.params.validate();

  const int rows = spec.steps + 1;
  std::vector<SweepRow> out(rows);
  parallel_for(rows, threads, [&](std::size_t i) {
    SweepRow row;
    row.dp1 = spec.dp1_start + (spec.dp1_stop - spec.dp1_start) * static_cast<double>(i) / spec.steps;
    const MultiplexConfig cfg = family_config(spec.family, spec.n_mp, row.dp1);
    row.in_window = config_in_window(spec.params, cfg, spec.grid);
    if (row.in_window) {
      const FrequencyGrid g = spec.grid.make();
      const JointSpectrum js = build_joint_spectrum(spec.params, cfg, g, g, true);
      const Eigen::VectorXd lam = schmidt_eigenvalues(js);
      std::vector<double> l;
      for (int n = 0; n < lam.size(); ++n)
        if (lam(n) > kEigenvalueFloor) l.push_back(lam(n));
      row.entropy_bits = entropy_bits(l);
      row.schmidt_number = schmidt_number(l);
      for (int n = 0; n < 8; ++n)
        row.lambdas[n] = n < static_cast<int>(l.size()) ? l[n] : 0.0;
    } else {
      row.entropy_bits = std::numeric_limits<double>::quiet_NaN();
      row.schmidt_number = std::numeric_limits<double>::quiet_NaN();
      row.lambdas.fill(std::numeric_limits<double>::quiet_NaN());
    }
    out[i] = row;
  });
  return out;
}

EntropyOptimum maximize_entropy(const PhysicalParams& params, const GridSpec& grid,
                                ShiftFamily family, int n_mp, double dp1_lo, double dp1_hi,
                                int rounds, double tol, int threads) {
  params.validate();
  if (n_mp < 1) throw std::invalid_argument("maximize_entropy: n_mp must be >= 1");
  if (!(dp1_hi > dp1_lo) || dp1_lo < 0.0)
    throw std::invalid_argument("maximize_entropy: bad dp1 bounds");

  EntropyOptimum best;
  best.entropy_bits = -1.0;
  int evals = 0;
  auto objective = [&](const std::vector<double>& pos) {
    ++evals;
    double k = 0.0;
    const MultiplexConfig cfg = config_from_positions(family, n_mp, pos);
    const double s = entropy_objective(params, grid, cfg, &k);
    if (s > best.entropy_bits) {
      best.entropy_bits = s;
      best.schmidt_number = k;
      best.free_shifts = pos;
      best.config = cfg;
    }
    return s;
  };

  if (n_mp == 1) {
    best.config = family_config(family, 1, 0.0);
    double k = 0.0;
    best.entropy_bits = entropy_objective(params, grid, best.config, &k);
    best.schmidt_number = k;
    best.evaluations = 1;
    return best;
  }

  // The largest lattice coefficient caps dp1 so every shift stays in window.
  const double margin = window_margin(params);
  const int pairs = n_mp / 2;
  const double cmax = n_mp % 2 == 0 ? 2.0 * pairs - 1.0 : static_cast<double>(pairs);
  const double dp1_cap = std::min(dp1_hi, (std::min(-grid.lo, grid.hi) - margin) / cmax);
  const double lo = std::max(dp1_lo, 0.0);

  // Seed: coarse scan of the one-parameter lattice. Scan points are
  // independent, so they may run concurrently; the best is then folded in
  // by index order to keep the result worker-count independent.
  const int scan_points = 13;
  std::vector<double> scan_s(scan_points), scan_k(scan_points);
  parallel_for(scan_points, threads, [&](std::size_t i) {
    const double dp1 = lo + (dp1_cap - lo) * static_cast<double>(i) / (scan_points - 1);
    scan_s[i] = entropy_objective(params, grid, config_from_positions(
                                                   family, n_mp, lattice_positions(n_mp, dp1)),
                                  &scan_k[i]);
  });
  double seed = lo;
  double seed_val = -1.0;
  for (int i = 0; i < scan_points; ++i) {
    ++evals;
    const double dp1 = lo + (dp1_cap - lo) * i / (scan_points - 1);
    if (scan_s[i] > seed_val) {
      seed_val = scan_s[i];
      seed = dp1;
    }
    if (scan_s[i] > best.entropy_bits) {
      best.entropy_bits = scan_s[i];
      best.schmidt_number = scan_k[i];
      best.free_shifts = lattice_positions(n_mp, dp1);
      best.config = config_from_positions(family, n_mp, best.free_shifts);
    }
  }

  std::vector<double> pos = lattice_positions(n_mp, seed);
  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int round = 0; round < rounds; ++round) {
    for (std::size_t c = 0; c < pos.size(); ++c) {
      const double coeff = n_mp % 2 == 0 ? 2.0 * c + 1.0 : static_cast<double>(c + 1);
      double a = lo * coeff;
      double b = (std::min(-grid.lo, grid.hi) - margin);
      b = std::min(b, dp1_hi * coeff);
      if (!(b - a > tol)) continue;
      auto eval_at = [&](double x) {
        std::vector<double> p = pos;
        p[c] = x;
        return objective(p);
      };
      double x1 = b - golden * (b - a);
      double x2 = a + golden * (b - a);
      double f1 = eval_at(x1), f2 = eval_at(x2);
      while (b - a > tol) {
        if (f1 < f2) {
          a = x1;
          x1 = x2;
          f1 = f2;
          x2 = a + golden * (b - a);
          f2 = eval_at(x2);
        } else {
          b = x2;
          x2 = x1;
          f2 = f1;
          x1 = b - golden * (b - a);
          f1 = eval_at(x1);
        }
      }
      pos[c] = f1 > f2 ? x1 : x2;
      eval_at(pos[c]);
    }
    std::sort(pos.begin(), pos.end());
  }

  best.evaluations = evals;
  return best;
}

ScalingFit fit_scaling(const std::vector<int>& n_mp, const std::vector<double>& s_max,
                       const std::vector<double>& k_max) {
  if (n_mp.size() < 3) throw InsufficientPoints("fit_scaling needs at least three counts");
  if (n_mp.size() != s_max.size() || n_mp.size() != k_max.size())
    throw std::invalid_argument("fit_scaling: size mismatch");

  ScalingFit fit;
  fit.n_mp = n_mp;
  fit.s_max = s_max;
  fit.k_max = k_max;

  double acc = 0.0;
  for (std::size_t i = 0; i < n_mp.size(); ++i) acc += s_max[i] - std::log2(static_cast<double>(n_mp[i]));
  fit.s_excess = acc / static_cast<double>(n_mp.size());

  const double n = static_cast<double>(n_mp.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n_mp.size(); ++i) {
    sx += n_mp[i];
    sy += k_max[i];
    sxx += static_cast<double>(n_mp[i]) * n_mp[i];
    sxy += n_mp[i] * k_max[i];
  }
  fit.k_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.k_intercept = (sy - fit.k_slope * sx) / n;

  double res2 = 0, mag2 = 0;
  for (std::size_t i = 0; i < n_mp.size(); ++i) {
    const double pred = fit.k_slope * n_mp[i] + fit.k_intercept;
    res2 += (k_max[i] - pred) * (k_max[i] - pred);
    mag2 += k_max[i] * k_max[i];
  }
  fit.k_rel_residual = std::sqrt(res2 / mag2);
  return fit;
}

}  // namespace biphoton
