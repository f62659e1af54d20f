#pragma once

#include <vector>

namespace biphoton {

// Quadrature rule on [lo, hi]: sum(weights[j] * g(nodes[j])) approximates the
// integral of g. Weights are positive and sum to hi - lo; nodes are strictly
// increasing and contained in the interval.
struct FrequencyGrid {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;

  int size() const { return static_cast<int>(nodes.size()); }
  double spacing_max() const;

  // Throws std::invalid_argument when any invariant fails.
  void validate() const;
};

// Uniform nodes with composite-trapezoid weights. Adequate for the smooth
// Gaussian-Lorentzian products here (pole distance from the real axis keeps
// the trapezoid error exponentially small in n).
FrequencyGrid make_uniform_grid(double lo, double hi, int n);

// Composite Gauss-Legendre panels behind the same contract. n must be a
// multiple of the panel order.
FrequencyGrid make_gauss_legendre_grid(double lo, double hi, int n, int panel_order = 8);

// Grid request as it appears in configuration files.
struct GridSpec {
  double lo = -300.0;
  double hi = 300.0;
  int n = 1024;

  FrequencyGrid make() const { return make_uniform_grid(lo, hi, n); }
};

}  // namespace biphoton
