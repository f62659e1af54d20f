#include "biphoton/timedomain.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "biphoton/errors.hpp"
#include "biphoton/parallel.hpp"

namespace biphoton {

namespace {
constexpr double kPi = std::numbers::pi;
}

TimeWindow default_time_window(const PhysicalParams& params, const FrequencyGrid& grid) {
  TimeWindow w;
  w.t_lo = -2.0 * params.tau;
  const double tail = 60.0 / params.gamma3N;              // density < 1e-4 of peak well before this
  const double alias = 2.0 * kPi / grid.spacing_max();    // discrete transform repeats past this
  w.t_hi = w.t_lo + std::min(tail + 2.0 * params.tau, alias * (1.0 - 1e-9));
  const double span = grid.hi - grid.lo;
  const double fastest = 2.0 * kPi / span;
  int n = static_cast<int>(std::ceil(8.0 * (w.t_hi - w.t_lo) / fastest)) + 1;
  w.n_t = std::max(n, 512);
  return w;
}

TimeModes to_time(const Eigen::MatrixXcd& freq_modes, const FrequencyGrid& grid,
                  const TimeWindow& window, int threads) {
  grid.validate();
  if (freq_modes.rows() != grid.size())
    throw std::invalid_argument("to_time: mode rows must match the grid");
  if (window.n_t < 2 || !(window.t_hi > window.t_lo))
    throw std::invalid_argument("to_time: bad time window");

  const double dt = (window.t_hi - window.t_lo) / (window.n_t - 1);
  const double wmax = std::max(std::abs(grid.lo), std::abs(grid.hi));
  if (dt * wmax > kPi)
    throw NyquistViolated("time step cannot resolve the frequency extent");
  if ((window.t_hi - window.t_lo) > 2.0 * kPi / grid.spacing_max() * (1.0 + 1e-9))
    throw NyquistViolated("time window exceeds the alias period of the node spacing");

  TimeModes tm;
  tm.dt = dt;
  tm.time_grid.resize(window.n_t);
  for (int i = 0; i < window.n_t; ++i) tm.time_grid(i) = window.t_lo + dt * i;
  const int r = static_cast<int>(freq_modes.cols());
  const int nw = grid.size();
  tm.modes.resize(window.n_t, r);

  const double scale = 1.0 / std::sqrt(2.0 * kPi);
  parallel_for(r, threads, [&](std::size_t n) {
    for (int i = 0; i < window.n_t; ++i) {
      const double t = tm.time_grid(i);
      std::complex<double> acc{0.0, 0.0};
      for (int j = 0; j < nw; ++j) {
        const double ph = -grid.nodes[j] * t;
        acc += grid.weights[j] * freq_modes(j, n) * std::complex<double>(std::cos(ph), std::sin(ph));
      }
      tm.modes(i, n) = scale * acc;
    }
  });
  return tm;
}

Eigen::MatrixXcd to_frequency(const TimeModes& tm, const FrequencyGrid& grid, int threads) {
  const int r = static_cast<int>(tm.modes.cols());
  const int nt = static_cast<int>(tm.time_grid.size());
  Eigen::MatrixXcd out(grid.size(), r);
  const double scale = 1.0 / std::sqrt(2.0 * kPi);
  parallel_for(r, threads, [&](std::size_t n) {
    for (int j = 0; j < grid.size(); ++j) {
      std::complex<double> acc{0.0, 0.0};
      for (int i = 0; i < nt; ++i) {
        const double wtrap = (i == 0 || i == nt - 1) ? tm.dt / 2.0 : tm.dt;
        const double ph = grid.nodes[j] * tm.time_grid(i);
        acc += wtrap * tm.modes(i, n) * std::complex<double>(std::cos(ph), std::sin(ph));
      }
      out(j, n) = scale * acc;
    }
  });
  return out;
}

double dominant_period(const TimeModes& tm, int mode, double rel_peak_floor) {
  const int nt = static_cast<int>(tm.time_grid.size());
  if (mode < 0 || mode >= tm.modes.cols()) throw std::invalid_argument("dominant_period: bad mode index");

  // Hann-windowed density keeps truncation sidelobes below any real beat.
  std::vector<double> g(nt);
  for (int i = 0; i < nt; ++i) {
    const double hann = 0.5 * (1.0 - std::cos(2.0 * kPi * i / (nt - 1)));
    g[i] = std::norm(tm.modes(i, mode)) * hann;
  }

  const double span = tm.time_grid(nt - 1) - tm.time_grid(0);
  const int kmax = nt / 2;
  std::vector<double> power(kmax + 1, 0.0);
  for (int k = 0; k <= kmax; ++k) {
    const double nu = 2.0 * kPi * k / span;
    std::complex<double> acc{0.0, 0.0};
    for (int i = 0; i < nt; ++i) {
      const double ph = -nu * tm.time_grid(i);
      acc += g[i] * std::complex<double>(std::cos(ph), std::sin(ph));
    }
    power[k] = std::norm(acc);
  }

  double pmax = 0.0;
  for (int k = 0; k <= kmax; ++k) pmax = std::max(pmax, power[k]);

  int best = -1;
  for (int k = 2; k < kmax; ++k) {
    if (power[k] > power[k - 1] && power[k] >= power[k + 1] && power[k] >= rel_peak_floor * pmax) {
      if (best < 0 || power[k] > power[best]) best = k;
    }
  }
  if (best < 0) throw NoOscillationFound("density spectrum has no interior peak");
  return span / best;  // 2 pi / nu_best
}

double tail_decay_rate(const TimeModes& tm, int mode, double hi_frac, double lo_frac) {
  const int nt = static_cast<int>(tm.time_grid.size());
  int ipeak = 0;
  double dpeak = 0.0;
  for (int i = 0; i < nt; ++i) {
    const double d = std::norm(tm.modes(i, mode));
    if (d > dpeak) {
      dpeak = d;
      ipeak = i;
    }
  }
  if (dpeak <= 0.0) throw std::invalid_argument("tail_decay_rate: empty mode");

  // Least squares on log density between the two fractional levels.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (int i = ipeak + 1; i < nt; ++i) {
    const double d = std::norm(tm.modes(i, mode));
    const double frac = d / dpeak;
    if (frac < lo_frac) break;
    if (frac > hi_frac) continue;
    const double x = tm.time_grid(i), y = std::log(d);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 8) throw std::invalid_argument("tail_decay_rate: tail not resolved in window");
  const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  return -slope;
}

}  // namespace biphoton
