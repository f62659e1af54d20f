#pragma once

#include <string>
#include <vector>

#include "biphoton/dynamics.hpp"
#include "biphoton/grid.hpp"
#include "biphoton/params.hpp"

namespace biphoton {

struct VerifyCheck {
  std::string name;
  double value = 0.0;      // measured deviation (or deficit)
  double tolerance = 0.0;  // pass when value < tolerance
  bool pass = false;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  double max_oracle_deviation = 0.0;
  bool pass = false;
};

// Cross-checks the closed-form spectrum against the time-domain integral
// oracle, the adiabatic solution against the integrated amplitudes, and the
// decomposition invariants on the given configuration.
VerifyReport run_verification(const PhysicalParams& params, const DriveParams& drive,
                              const MultiplexConfig& cfg, const GridSpec& grid,
                              double dyn_dt = 2.5e-4, int threads = 1);

}  // namespace biphoton
