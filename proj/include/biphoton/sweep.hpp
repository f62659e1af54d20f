#pragma once

#include <array>
#include <vector>

#include "biphoton/grid.hpp"
#include "biphoton/params.hpp"

namespace biphoton {

// Shift-lattice families. Both place the Lorentzian shifts on a centered
// arithmetic progression parametrized by the smallest positive shift dp1
// (zero included when the ensemble count is odd):
//   symmetric     dq_m = 0       spectrum aligned with the energy axis
//   nonsymmetric  dq_m = dp_m    control family, factorizable spectrum
enum class ShiftFamily { symmetric, nonsymmetric };

MultiplexConfig family_config(ShiftFamily family, int n_mp, double dp1);

// Margin in frequency units that keeps the shifted Lorentzian and ridge
// inside the window: max(4/tau, 4 gamma3N).
double window_margin(const PhysicalParams& params);
bool config_in_window(const PhysicalParams& params, const MultiplexConfig& cfg, const GridSpec& grid);

struct SweepSpec {
  PhysicalParams params;
  GridSpec grid{-300.0, 300.0, 512};
  ShiftFamily family = ShiftFamily::symmetric;
  int n_mp = 2;
  double dp1_start = 0.0;
  double dp1_stop = 75.0;
  int steps = 15;  // number of intervals; steps+1 rows
};

struct SweepRow {
  double dp1 = 0.0;
  double entropy_bits = 0.0;
  double schmidt_number = 0.0;
  std::array<double, 8> lambdas{};
  bool in_window = true;
};

// One decomposition per lattice point, deterministic row order. Out-of-window
// rows are flagged and carry NaN metrics instead of failing the sweep.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, int threads = 1);

struct EntropyOptimum {
  MultiplexConfig config;
  std::vector<double> free_shifts;  // optimized pair positions, ascending
  double entropy_bits = 0.0;
  double schmidt_number = 0.0;
  int evaluations = 0;
};

// Deterministic coordinate search over the family's free shift parameters:
// a coarse scan of the one-parameter lattice seeds the pair positions, then
// `rounds` passes of golden-section refinement per coordinate down to `tol`.
EntropyOptimum maximize_entropy(const PhysicalParams& params, const GridSpec& grid,
                                ShiftFamily family, int n_mp, double dp1_lo, double dp1_hi,
                                int rounds = 2, double tol = 0.5, int threads = 1);

struct ScalingFit {
  std::vector<int> n_mp;
  std::vector<double> s_max;
  std::vector<double> k_max;
  double s_excess = 0.0;      // mean of s_max - log2(n_mp)
  double k_slope = 0.0;       // least-squares K vs N
  double k_intercept = 0.0;
  double k_rel_residual = 0.0;
};

// Throws InsufficientPoints below three counts.
ScalingFit fit_scaling(const std::vector<int>& n_mp, const std::vector<double>& s_max,
                       const std::vector<double>& k_max);

}  // namespace biphoton
