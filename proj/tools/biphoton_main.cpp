#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "biphoton/errors.hpp"
#include "biphoton/io.hpp"
#include "biphoton/schmidt.hpp"
#include "biphoton/spectral.hpp"
#include "biphoton/sweep.hpp"
#include "biphoton/timedomain.hpp"
#include "biphoton/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitVerifyFailed = 4;

enum class LogLevel { quiet = 0, info = 1, debug = 2 };

LogLevel log_level() {
  const char* env = std::getenv("BIPHOTON_LOG");
  if (!env) return LogLevel::info;
  const std::string v = env;
  if (v == "quiet") return LogLevel::quiet;
  if (v == "debug") return LogLevel::debug;
  return LogLevel::info;
}

void log_info(const std::string& msg) {
  if (log_level() >= LogLevel::info) std::cerr << msg << "\n";
}

struct Options {
  std::string config_path;
  std::string out_prefix = "out";
  int rank = 0;  // 0 = from config
  int threads = 1;
  bool plot = false;
};

void ensure_parent_dir(const std::string& prefix) {
  const std::filesystem::path p(prefix);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
}

int run_spectrum(const biphoton::RunConfig& cfg, const Options& opt) {
  const biphoton::FrequencyGrid grid = cfg.grid.make();
  const auto js = biphoton::build_joint_spectrum(cfg.params, cfg.ensembles, grid, grid, true,
                                                 opt.threads);
  ensure_parent_dir(opt.out_prefix);
  biphoton::write_spectrum_csv(opt.out_prefix + ".csv", js);
  log_info("wrote " + opt.out_prefix + ".csv");
  if (opt.plot) {
    biphoton::write_heatmap_svg(opt.out_prefix + ".svg", js);
    log_info("wrote " + opt.out_prefix + ".svg");
  }
  return kExitOk;
}

int run_decompose(const biphoton::RunConfig& cfg, const Options& opt) {
  const biphoton::FrequencyGrid grid = cfg.grid.make();
  const auto js = biphoton::build_joint_spectrum(cfg.params, cfg.ensembles, grid, grid, true,
                                                 opt.threads);
  const int rank = std::min(opt.rank > 0 ? opt.rank : cfg.rank, grid.size());
  const auto res = biphoton::decompose(js, rank);
  ensure_parent_dir(opt.out_prefix);
  biphoton::write_schmidt_json(opt.out_prefix + ".json", res);
  biphoton::write_modes_csv(opt.out_prefix + "_signal_modes.csv", js.signal_grid, res.signal_modes,
                            "psi");
  biphoton::write_modes_csv(opt.out_prefix + "_idler_modes.csv", js.idler_grid, res.idler_modes,
                            "phi");
  log_info("wrote " + opt.out_prefix + ".json and mode CSVs");
  if (opt.plot) {
    const int shown = std::min<int>(4, static_cast<int>(res.signal_modes.cols()));
    std::vector<std::vector<double>> dens(shown);
    for (int n = 0; n < shown; ++n) {
      dens[n].resize(grid.size());
      for (int j = 0; j < grid.size(); ++j) dens[n][j] = std::norm(res.signal_modes(j, n));
    }
    biphoton::write_lines_svg(opt.out_prefix + ".svg", grid.nodes, dens, "signal detuning",
                              "mode density");
    log_info("wrote " + opt.out_prefix + ".svg");
  }
  return kExitOk;
}

int run_timedomain(const biphoton::RunConfig& cfg, const Options& opt) {
  const biphoton::FrequencyGrid grid = cfg.grid.make();
  const auto js = biphoton::build_joint_spectrum(cfg.params, cfg.ensembles, grid, grid, true,
                                                 opt.threads);
  const int rank = std::min(opt.rank > 0 ? opt.rank : cfg.timedomain.rank, grid.size());
  const auto res = biphoton::decompose(js, rank);

  biphoton::TimeWindow window = biphoton::default_time_window(cfg.params, grid);
  if (cfg.timedomain.t_hi > cfg.timedomain.t_lo || cfg.timedomain.n_t > 0) {
    if (cfg.timedomain.t_hi > cfg.timedomain.t_lo) {
      window.t_lo = cfg.timedomain.t_lo;
      window.t_hi = cfg.timedomain.t_hi;
    }
    if (cfg.timedomain.n_t > 0) window.n_t = cfg.timedomain.n_t;
  }

  const auto signal_t = biphoton::to_time(res.signal_modes, js.signal_grid, window, opt.threads);
  const auto idler_t = biphoton::to_time(res.idler_modes, js.idler_grid, window, opt.threads);
  ensure_parent_dir(opt.out_prefix);
  biphoton::write_time_csv(opt.out_prefix + "_signal_time.csv", signal_t);
  biphoton::write_time_csv(opt.out_prefix + "_idler_time.csv", idler_t);

  auto periods = [&](const biphoton::TimeModes& tm) {
    std::vector<double> out;
    for (int n = 0; n < tm.modes.cols(); ++n) {
      try {
        out.push_back(biphoton::dominant_period(tm, n));
      } catch (const biphoton::NoOscillationFound&) {
        out.push_back(std::nan(""));
      }
    }
    return out;
  };
  biphoton::write_periods_json(opt.out_prefix + ".json", periods(signal_t), periods(idler_t));
  log_info("wrote time-domain CSVs and " + opt.out_prefix + ".json");

  if (opt.plot) {
    std::vector<double> t(signal_t.time_grid.data(),
                          signal_t.time_grid.data() + signal_t.time_grid.size());
    std::vector<std::vector<double>> dens(signal_t.modes.cols());
    for (int n = 0; n < signal_t.modes.cols(); ++n) {
      dens[n].resize(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) dens[n][i] = std::norm(signal_t.modes(i, n));
    }
    biphoton::write_lines_svg(opt.out_prefix + ".svg", t, dens, "time", "signal mode density");
    log_info("wrote " + opt.out_prefix + ".svg");
  }
  return kExitOk;
}

int run_sweep_cmd(const biphoton::RunConfig& cfg, const Options& opt) {
  biphoton::SweepSpec spec;
  spec.params = cfg.params;
  spec.grid = cfg.grid;
  spec.family = cfg.sweep.family;
  spec.n_mp = cfg.sweep.n_mp;
  spec.dp1_start = cfg.sweep.dp1_start;
  spec.dp1_stop = cfg.sweep.dp1_stop;
  spec.steps = cfg.sweep.steps;
  const auto rows = biphoton::run_sweep(spec, opt.threads);
  ensure_parent_dir(opt.out_prefix);
  biphoton::write_sweep_csv(opt.out_prefix + ".csv", rows);
  log_info("wrote " + opt.out_prefix + ".csv");

  if (!cfg.sweep.scaling_n_mp.empty()) {
    std::vector<int> ns;
    std::vector<double> smax, kmax;
    for (int n : cfg.sweep.scaling_n_mp) {
      const auto best = biphoton::maximize_entropy(cfg.params, cfg.grid, cfg.sweep.family, n,
                                                   std::max(1.0, cfg.sweep.dp1_start),
                                                   cfg.sweep.dp1_stop, 2, 0.5, opt.threads);
      ns.push_back(n);
      smax.push_back(best.entropy_bits);
      kmax.push_back(best.schmidt_number);
      log_info("n_mp " + std::to_string(n) + ": S_max " + std::to_string(best.entropy_bits) +
               " after " + std::to_string(best.evaluations) + " evaluations");
    }
    const auto fit = biphoton::fit_scaling(ns, smax, kmax);
    biphoton::write_scaling_json(opt.out_prefix + "_scaling.json", fit);
    log_info("wrote " + opt.out_prefix + "_scaling.json");
  }
  if (opt.plot) {
    std::vector<double> x;
    std::vector<std::vector<double>> s(1);
    for (const auto& r : rows)
      if (r.in_window) {
        x.push_back(r.dp1);
        s[0].push_back(r.entropy_bits);
      }
    if (x.size() >= 2) {
      biphoton::write_lines_svg(opt.out_prefix + ".svg", x, s, "dp1", "entropy [bits]");
      log_info("wrote " + opt.out_prefix + ".svg");
    }
  }
  return kExitOk;
}

int run_verify(const biphoton::RunConfig& cfg, const Options& opt) {
  const auto rep = biphoton::run_verification(cfg.params, cfg.drive, cfg.ensembles, cfg.grid,
                                              cfg.dynamics_dt, opt.threads);
  ensure_parent_dir(opt.out_prefix);
  biphoton::write_verify_json(opt.out_prefix + ".json", rep);
  for (const auto& c : rep.checks)
    std::cout << (c.pass ? "pass " : "FAIL ") << c.name << " value " << c.value << " tolerance "
              << c.tolerance << "\n";
  std::cout << (rep.pass ? "pass" : "FAIL") << " (max oracle deviation " << rep.max_oracle_deviation
            << ")\n";
  return rep.pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"joint-spectrum shaping of multiplexed cascade emission pairs"};
  app.require_subcommand(0, 1);

  Options opt;
  bool print_config = false;
  app.add_flag("--print-config", print_config, "print the fully-defaulted config JSON and exit");

  std::string subcommand_names[] = {"spectrum", "decompose", "timedomain", "sweep", "verify"};
  const char* descriptions[] = {"evaluate the joint spectrum and export CSV (optionally SVG)",
                                "Schmidt decomposition: eigenvalues, metrics, mode functions",
                                "Fourier-transform leading modes to time and extract beat periods",
                                "entropy/Schmidt-number sweep over the shift lattice",
                                "run the time-domain oracle and invariant suite"};
  std::vector<CLI::App*> subs;
  for (int i = 0; i < 5; ++i) {
    CLI::App* sub = app.add_subcommand(subcommand_names[i], descriptions[i]);
    sub->add_option("--config", opt.config_path, "JSON configuration file")->required();
    sub->add_option("--out", opt.out_prefix, "output path prefix");
    sub->add_option("--rank", opt.rank, "number of Schmidt modes to export");
    sub->add_option("--threads", opt.threads, "worker thread cap");
    sub->add_flag("--plot", opt.plot, "also write an SVG plot");
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  if (print_config) {
    std::cout << biphoton::default_config_json();
    return kExitOk;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return kExitConfig;
  }

  try {
    const biphoton::RunConfig cfg = biphoton::parse_config_file(opt.config_path);
    if (opt.threads < 1) opt.threads = 1;
    const CLI::App* active = app.get_subcommands().front();
    if (active == subs[0]) return run_spectrum(cfg, opt);
    if (active == subs[1]) return run_decompose(cfg, opt);
    if (active == subs[2]) return run_timedomain(cfg, opt);
    if (active == subs[3]) return run_sweep_cmd(cfg, opt);
    return run_verify(cfg, opt);
  } catch (const biphoton::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
