#pragma once

#include <Eigen/Core>

#include "biphoton/grid.hpp"
#include "biphoton/params.hpp"

namespace biphoton {

struct TimeWindow {
  double t_lo = 0.0;
  double t_hi = 0.0;
  int n_t = 0;
};

// Window sized to capture the superradiant tail below 1e-4 of peak while
// staying inside one alias period of the frequency-node spacing; the step
// gives at least 8 samples per fastest beat across the grid span.
TimeWindow default_time_window(const PhysicalParams& params, const FrequencyGrid& grid);

struct TimeModes {
  Eigen::VectorXd time_grid;  // uniform
  Eigen::MatrixXcd modes;     // n_t x r
  double dt = 0.0;
};

// Quadrature Fourier transform, mode_n(t) = (2pi)^{-1/2} sum_j w_j m_jn e^{-i w_j t}.
// Unitary convention: unit-norm frequency modes keep unit time-domain mass.
// Throws NyquistViolated when dt cannot resolve the grid extent or the window
// exceeds the alias period 2pi / max node spacing.
TimeModes to_time(const Eigen::MatrixXcd& freq_modes, const FrequencyGrid& grid,
                  const TimeWindow& window, int threads = 1);

// Inverse transform back onto the grid nodes (for round-trip checks).
Eigen::MatrixXcd to_frequency(const TimeModes& tm, const FrequencyGrid& grid, int threads = 1);

// Period of the strongest nonzero-frequency peak of the mode's probability
// density, from a Hann-windowed periodogram. A two-peak frequency mode with
// separation D beats at period 2pi/D. Throws NoOscillationFound when no
// interior peak reaches rel_peak_floor of the total maximum.
double dominant_period(const TimeModes& tm, int mode, double rel_peak_floor = 1e-2);

// Exponential decay rate of the density tail, fitted by least squares on
// log density over the stretch [lo_frac, hi_frac] of peak after the maximum.
double tail_decay_rate(const TimeModes& tm, int mode, double hi_frac = 1e-2, double lo_frac = 1e-6);

}  // namespace biphoton
