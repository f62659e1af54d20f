#include "biphoton/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace biphoton {

double FrequencyGrid::spacing_max() const {
  double h = 0.0;
  for (std::size_t j = 1; j < nodes.size(); ++j) h = std::max(h, nodes[j] - nodes[j - 1]);
  return h;
}

void FrequencyGrid::validate() const {
  if (!(lo < hi)) throw std::invalid_argument("grid: lo must be < hi");
  if (nodes.size() < 2) throw std::invalid_argument("grid: need n >= 2 nodes");
  if (nodes.size() != weights.size()) throw std::invalid_argument("grid: nodes/weights size mismatch");
  double wsum = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    if (!(weights[j] > 0.0)) throw std::invalid_argument("grid: weights must be positive");
    if (nodes[j] < lo || nodes[j] > hi) throw std::invalid_argument("grid: node outside [lo, hi]");
    if (j > 0 && !(nodes[j] > nodes[j - 1]))
      throw std::invalid_argument("grid: nodes must be strictly increasing");
    wsum += weights[j];
  }
  if (std::abs(wsum - (hi - lo)) > 1e-12 * (hi - lo))
    throw std::invalid_argument("grid: weights must sum to hi - lo");
}

FrequencyGrid make_uniform_grid(double lo, double hi, int n) {
  if (n < 2) throw std::invalid_argument("grid: need n >= 2 nodes");
  if (!(lo < hi)) throw std::invalid_argument("grid: lo must be < hi");
  FrequencyGrid g;
  g.lo = lo;
  g.hi = hi;
  g.nodes.resize(n);
  g.weights.resize(n);
  const double h = (hi - lo) / (n - 1);
  for (int j = 0; j < n; ++j) {
    g.nodes[j] = lo + h * j;
    g.weights[j] = (j == 0 || j == n - 1) ? h / 2.0 : h;
  }
  g.nodes.front() = lo;
  g.nodes.back() = hi;
  return g;
}

namespace {

// Legendre nodes/weights on [-1, 1] by Newton iteration on the recurrence.
void legendre_rule(int order, std::vector<double>& x, std::vector<double>& w) {
  x.assign(order, 0.0);
  w.assign(order, 0.0);
  const int m = (order + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 0; k < order; ++k) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * z * p1 - k * p2) / (k + 1.0);
      }
      pp = order * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[order - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[order - 1 - i] = w[i];
  }
}

}  // namespace

FrequencyGrid make_gauss_legendre_grid(double lo, double hi, int n, int panel_order) {
  if (panel_order < 2) throw std::invalid_argument("grid: panel order must be >= 2");
  if (n < panel_order || n % panel_order != 0)
    throw std::invalid_argument("grid: n must be a positive multiple of the panel order");
  if (!(lo < hi)) throw std::invalid_argument("grid: lo must be < hi");

  std::vector<double> xr, wr;
  legendre_rule(panel_order, xr, wr);

  FrequencyGrid g;
  g.lo = lo;
  g.hi = hi;
  const int panels = n / panel_order;
  const double width = (hi - lo) / panels;
  g.nodes.reserve(n);
  g.weights.reserve(n);
  for (int p = 0; p < panels; ++p) {
    const double a = lo + p * width;
    const double mid = a + width / 2.0;
    for (int k = 0; k < panel_order; ++k) {
      g.nodes.push_back(mid + 0.5 * width * xr[k]);
      g.weights.push_back(0.5 * width * wr[k]);
    }
  }
  return g;
}

}  // namespace biphoton
