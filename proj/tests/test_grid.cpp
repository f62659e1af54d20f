#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "biphoton/grid.hpp"

using namespace biphoton;

namespace {

double integrate(const FrequencyGrid& g, double (*f)(double)) {
  double acc = 0.0;
  for (int j = 0; j < g.size(); ++j) acc += g.weights[j] * f(g.nodes[j]);
  return acc;
}

double gaussian(double x) { return std::exp(-x * x / 2.0); }

}  // namespace

TEST_CASE("uniform grid satisfies the quadrature contract") {
  const auto g = make_uniform_grid(-300.0, 300.0, 1024);
  g.validate();
  CHECK(g.size() == 1024);
  CHECK(g.nodes.front() == -300.0);
  CHECK(g.nodes.back() == 300.0);
  double wsum = 0.0;
  for (double w : g.weights) wsum += w;
  CHECK(std::abs(wsum - 600.0) < 1e-12 * 600.0);
}

TEST_CASE("gauss-legendre panels satisfy the same contract") {
  const auto g = make_gauss_legendre_grid(-300.0, 300.0, 1024, 8);
  g.validate();
  CHECK(g.size() == 1024);
  CHECK(g.nodes.front() > -300.0);
  CHECK(g.nodes.back() < 300.0);
}

TEST_CASE("both rules integrate a gaussian to machine accuracy") {
  const double exact = std::sqrt(2.0 * std::numbers::pi);
  const auto trap = make_uniform_grid(-10.0, 10.0, 256);
  const auto gl = make_gauss_legendre_grid(-10.0, 10.0, 256, 8);
  CHECK(std::abs(integrate(trap, gaussian) - exact) < 1e-10);
  CHECK(std::abs(integrate(gl, gaussian) - exact) < 1e-12);
}

TEST_CASE("grid construction rejects bad requests") {
  CHECK_THROWS_AS(make_uniform_grid(1.0, -1.0, 16), std::invalid_argument);
  CHECK_THROWS_AS(make_uniform_grid(-1.0, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_gauss_legendre_grid(-1.0, 1.0, 10, 8), std::invalid_argument);
}

TEST_CASE("validate flags corrupted grids") {
  auto g = make_uniform_grid(-1.0, 1.0, 32);
  g.weights[3] = -g.weights[3];
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);

  g = make_uniform_grid(-1.0, 1.0, 32);
  std::swap(g.nodes[4], g.nodes[5]);
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);

  g = make_uniform_grid(-1.0, 1.0, 32);
  g.weights[7] *= 1.5;
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
}
