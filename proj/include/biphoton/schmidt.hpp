#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

#include "biphoton/spectral.hpp"

namespace biphoton {

// Eigenvalues below this carry no information (log of numerical zero) and are
// dropped before entropy / Schmidt-number sums.
inline constexpr double kEigenvalueFloor = 1e-15;

// Consecutive eigenvalues closer than this relative gap count as degenerate.
inline constexpr double kDegeneracyTol = 1e-2;

// Pairs closer than this are numerically exact ties (solver noise sits near
// 1e-15 relative); within such a group the mode basis is rotated to
// diagonalize the frequency centroid so that outputs are deterministic and
// frequency-resolved blocks come out localized. Physical tunneling splittings
// of partially overlapping configurations stay well above this.
inline constexpr double kExactTieTol = 1e-12;

struct DegeneratePair {
  int first = 0;   // 1-based mode indices
  int second = 0;
  double rel_gap = 0.0;
};

struct SchmidtResult {
  Eigen::VectorXd eigenvalues;    // descending, `rank` entries
  Eigen::MatrixXcd signal_modes;  // n_s x rank; column n is psi_n on the signal grid
  Eigen::MatrixXcd idler_modes;   // n_i x rank; column n is phi_n on the idler grid
  double entropy_bits = 0.0;      // from the full spectrum, not the truncation
  double schmidt_number = 1.0;
  std::vector<DegeneratePair> pairs;   // among the returned eigenvalues
  double reconstruction_error = 0.0;   // weighted L2 distance at the returned rank
  double tail_mass = 0.0;              // spectral mass beyond the returned rank
};

// Shannon entropy -sum lam log2 lam over entries above kEigenvalueFloor.
// Throws NotAProbabilityVector when an entry is negative or the sum is not 1.
double entropy_bits(std::span<const double> eigenvalues);

// Participation ratio 1 / sum lam^2, same validation as entropy_bits.
double schmidt_number(std::span<const double> eigenvalues);

// Greedily pairs consecutive descending eigenvalues with relative gap below
// rel_tol; unpaired values are skipped. Indices are 1-based.
std::vector<DegeneratePair> pair_degeneracies(std::span<const double> eigenvalues,
                                              double rel_tol = kDegeneracyTol);

// Schmidt decomposition of a normalized joint spectrum via SVD of the
// weight-symmetrized matrix M = sqrt(ws) a sqrt(wi). Eigenvalues are the
// squared singular values; mode functions are the singular vectors with the
// quadrature weights divided back out, so orthonormality holds under the
// grid inner product. rank <= 0 requests the full decomposition.
// Throws NotNormalized / RankTooLarge.
SchmidtResult decompose(const JointSpectrum& js, int rank = 0);

// Eigenvalues only (Hermitian solve of the idler-side Gram matrix); much
// cheaper than decompose when no mode functions are needed. Descending.
Eigen::VectorXd schmidt_eigenvalues(const JointSpectrum& js);

// Quadrature overlap of two mode probability densities,
// integral of min(|modes_a|^2, |modes_b|^2). Zero-based column indices.
double density_overlap(const Eigen::MatrixXcd& modes, const FrequencyGrid& grid, int a, int b);

}  // namespace biphoton
