#pragma once

#include <string>
#include <vector>

#include "biphoton/dynamics.hpp"
#include "biphoton/grid.hpp"
#include "biphoton/params.hpp"
#include "biphoton/schmidt.hpp"
#include "biphoton/sweep.hpp"
#include "biphoton/timedomain.hpp"
#include "biphoton/verify.hpp"

namespace biphoton {

// Optional sections of the run configuration. Zeros mean "derive from the
// physical parameters at run time".
struct TimedomainSpec {
  double t_lo = 0.0;
  double t_hi = 0.0;
  int n_t = 0;
  int rank = 4;  // modes transformed per side
};

struct SweepFileSpec {
  ShiftFamily family = ShiftFamily::symmetric;
  int n_mp = 2;
  double dp1_start = 0.0;
  double dp1_stop = 75.0;
  int steps = 15;
  std::vector<int> scaling_n_mp;  // when nonempty, also optimize per count and fit
};

struct RunConfig {
  PhysicalParams params;
  GridSpec grid;
  MultiplexConfig ensembles = MultiplexConfig::single();
  int rank = 16;  // exported Schmidt modes
  SweepFileSpec sweep;
  TimedomainSpec timedomain;
  DriveParams drive;
  double dynamics_dt = 2.5e-4;
};

// Strict JSON parsing: gamma3N and tau are required, unknown keys are
// rejected, every diagnostic names the offending field. Throws ConfigError.
RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text);

// Fully-defaulted configuration, the output of --print-config.
std::string default_config_json();

// Full-precision decimal formatting (17 significant digits, round-trip safe).
std::string format_g17(double v);

void write_spectrum_csv(const std::string& path, const JointSpectrum& js);
void write_schmidt_json(const std::string& path, const SchmidtResult& r);
void write_modes_csv(const std::string& path, const FrequencyGrid& grid,
                     const Eigen::MatrixXcd& modes, const std::string& symbol);
void write_time_csv(const std::string& path, const TimeModes& tm);
void write_periods_json(const std::string& path, const std::vector<double>& signal_periods,
                        const std::vector<double>& idler_periods);  // NaN = no oscillation
void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);
void write_scaling_json(const std::string& path, const ScalingFit& fit);
void write_verify_json(const std::string& path, const VerifyReport& rep);

// Minimal dependency-free SVG artifacts.
void write_heatmap_svg(const std::string& path, const JointSpectrum& js, int max_cells = 220);
void write_lines_svg(const std::string& path, const std::vector<double>& x,
                     const std::vector<std::vector<double>>& series, const std::string& x_label,
                     const std::string& y_label);

}  // namespace biphoton
