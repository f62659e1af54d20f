#include "biphoton/schmidt.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "biphoton/errors.hpp"

namespace biphoton {

namespace {

void check_probability_vector(std::span<const double> lam) {
  double sum = 0.0;
  for (double l : lam) {
    if (l < -1e-12) throw NotAProbabilityVector("eigenvalue is negative");
    sum += l;
  }
  if (std::abs(sum - 1.0) > 1e-6)
    throw NotAProbabilityVector("eigenvalues must sum to 1");
}

// Largest-modulus component of a column; ties resolved to the lowest index.
int argmax_abs(const Eigen::MatrixXcd& m, int col) {
  int best = 0;
  double mag = 0.0;
  for (int j = 0; j < m.rows(); ++j) {
    double a = std::abs(m(j, col));
    if (a > mag) {
      mag = a;
      best = j;
    }
  }
  return best;
}

}  // namespace

double entropy_bits(std::span<const double> lam) {
  check_probability_vector(lam);
  double s = 0.0;
  for (double l : lam)
    if (l > kEigenvalueFloor) s -= l * std::log2(l);
  return s;
}

double schmidt_number(std::span<const double> lam) {
  check_probability_vector(lam);
  double p = 0.0;
  for (double l : lam)
    if (l > kEigenvalueFloor) p += l * l;
  return 1.0 / p;
}

std::vector<DegeneratePair> pair_degeneracies(std::span<const double> lam, double rel_tol) {
  std::vector<DegeneratePair> pairs;
  std::size_t i = 0;
  while (i + 1 < lam.size()) {
    if (lam[i] <= kEigenvalueFloor) break;
    const double gap = (lam[i] - lam[i + 1]) / lam[i];
    if (gap < rel_tol) {
      pairs.push_back({static_cast<int>(i) + 1, static_cast<int>(i) + 2, gap});
      i += 2;
    } else {
      ++i;
    }
  }
  return pairs;
}

SchmidtResult decompose(const JointSpectrum& js, int rank) {
  const int ns = js.signal_grid.size();
  const int ni = js.idler_grid.size();
  const int full = std::min(ns, ni);
  if (rank <= 0) rank = full;
  if (rank > full) throw RankTooLarge("rank exceeds min(n_s, n_i)");
  if (!js.normalized) throw NotNormalized("decompose requires a normalized joint spectrum");
  const double norm = js.weighted_norm();
  if (std::abs(norm - 1.0) > 1e-8)
    throw NotNormalized("joint spectrum norm drifted from 1");

  // Weight-symmetrized matrix; its singular values are quadrature-consistent
  // with the continuous kernel eigenproblem.
  Eigen::VectorXd sqw_s(ns), sqw_i(ni);
  for (int j = 0; j < ns; ++j) sqw_s(j) = std::sqrt(js.signal_grid.weights[j]);
  for (int k = 0; k < ni; ++k) sqw_i(k) = std::sqrt(js.idler_grid.weights[k]);
  Eigen::MatrixXcd M = sqw_s.asDiagonal() * js.amplitude * sqw_i.asDiagonal();

  Eigen::BDCSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  Eigen::MatrixXcd U = svd.matrixU();
  Eigen::MatrixXcd V = svd.matrixV();

  Eigen::VectorXd lam_full = sigma.array().square();
  const double total_mass = lam_full.sum();

  // Rotate numerically exact-tie groups to diagonalize the signal-frequency
  // centroid. A unitary mix of equal singular values leaves the decomposition
  // invariant, and this pins the basis: decoupled frequency blocks localize,
  // genuinely split pairs are left untouched.
  {
    int g0 = 0;
    while (g0 < rank) {
      int g1 = g0;
      while (g1 + 1 < full && lam_full(g0) > kEigenvalueFloor &&
             (lam_full(g1) - lam_full(g1 + 1)) < kExactTieTol * lam_full(g0))
        ++g1;
      const int g = g1 - g0 + 1;
      if (g > 1) {
        Eigen::MatrixXcd X(g, g);
        for (int a = 0; a < g; ++a)
          for (int b = 0; b < g; ++b) {
            std::complex<double> acc{0.0, 0.0};
            for (int j = 0; j < ns; ++j)
              acc += std::conj(U(j, g0 + a)) * js.signal_grid.nodes[j] * U(j, g0 + b);
            X(a, b) = acc;
          }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(X);
        U.middleCols(g0, g) = (U.middleCols(g0, g) * es.eigenvectors()).eval();
        V.middleCols(g0, g) = (V.middleCols(g0, g) * es.eigenvectors()).eval();

        // Deterministic order inside the tie: by the grid index of each
        // mode's largest component.
        std::vector<int> order(g);
        std::iota(order.begin(), order.end(), 0);
        std::vector<int> key(g);
        for (int a = 0; a < g; ++a) key[a] = argmax_abs(U, g0 + a);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return key[a] < key[b]; });
        Eigen::MatrixXcd Ug = U.middleCols(g0, g), Vg = V.middleCols(g0, g);
        for (int a = 0; a < g; ++a) {
          U.col(g0 + a) = Ug.col(order[a]);
          V.col(g0 + a) = Vg.col(order[a]);
        }
      }
      g0 = g1 + 1;
    }
  }

  SchmidtResult r;
  r.eigenvalues = lam_full.head(rank);
  r.tail_mass = std::max(0.0, total_mass - r.eigenvalues.sum());

  // Mode functions with the weights divided back out; phase convention makes
  // the largest signal component real positive, idler carries the conjugate.
  r.signal_modes.resize(ns, rank);
  r.idler_modes.resize(ni, rank);
  for (int n = 0; n < rank; ++n) {
    const int jstar = argmax_abs(U, n);
    std::complex<double> u = U(jstar, n);
    std::complex<double> phase = std::abs(u) > 0.0 ? u / std::abs(u) : std::complex<double>{1.0, 0.0};
    for (int j = 0; j < ns; ++j) r.signal_modes(j, n) = U(j, n) * std::conj(phase) / sqw_s(j);
    for (int k = 0; k < ni; ++k) r.idler_modes(k, n) = std::conj(V(k, n) * std::conj(phase)) / sqw_i(k);
  }

  r.reconstruction_error =
      (M - U.leftCols(rank) * sigma.head(rank).asDiagonal() * V.leftCols(rank).adjoint()).norm();

  std::vector<double> lam_metrics;
  lam_metrics.reserve(full);
  for (int n = 0; n < full; ++n)
    if (lam_full(n) > kEigenvalueFloor) lam_metrics.push_back(lam_full(n));
  r.entropy_bits = entropy_bits(lam_metrics);
  r.schmidt_number = schmidt_number(lam_metrics);
  r.pairs = pair_degeneracies({r.eigenvalues.data(), static_cast<std::size_t>(rank)});
  return r;
}

Eigen::VectorXd schmidt_eigenvalues(const JointSpectrum& js) {
  const int ns = js.signal_grid.size();
  const int ni = js.idler_grid.size();
  if (!js.normalized) throw NotNormalized("schmidt_eigenvalues requires a normalized joint spectrum");

  Eigen::VectorXd sqw_s(ns), sqw_i(ni);
  for (int j = 0; j < ns; ++j) sqw_s(j) = std::sqrt(js.signal_grid.weights[j]);
  for (int k = 0; k < ni; ++k) sqw_i(k) = std::sqrt(js.idler_grid.weights[k]);
  Eigen::MatrixXcd M = sqw_s.asDiagonal() * js.amplitude * sqw_i.asDiagonal();

  // Idler-side Gram matrix; same nonzero spectrum as the signal side.
  Eigen::MatrixXcd G;
  if (ni <= ns)
    G = M.adjoint() * M;
  else
    G = M * M.adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G, Eigen::EigenvaluesOnly);
  Eigen::VectorXd lam = es.eigenvalues().reverse();
  for (int i = 0; i < lam.size(); ++i) lam(i) = std::max(lam(i), 0.0);
  return lam;
}

double density_overlap(const Eigen::MatrixXcd& modes, const FrequencyGrid& grid, int a, int b) {
  double acc = 0.0;
  for (int j = 0; j < modes.rows(); ++j)
    acc += grid.weights[j] * std::min(std::norm(modes(j, a)), std::norm(modes(j, b)));
  return acc;
}

}  // namespace biphoton
