#include "biphoton/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "biphoton/errors.hpp"

namespace biphoton {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, const std::string& where,
                         const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw ConfigError("unknown field \"" + it.key() + "\" in " + where);
}

double require_number(const json& obj, const std::string& where, const std::string& key) {
  if (!obj.contains(key))
    throw ConfigError("missing required field \"" + key + "\" in " + where);
  if (!obj[key].is_number())
    throw ConfigError("field \"" + key + "\" in " + where + " must be a number");
  return obj[key].get<double>();
}

double optional_number(const json& obj, const std::string& where, const std::string& key,
                       double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number())
    throw ConfigError("field \"" + key + "\" in " + where + " must be a number");
  return obj[key].get<double>();
}

int optional_int(const json& obj, const std::string& where, const std::string& key, int fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer())
    throw ConfigError("field \"" + key + "\" in " + where + " must be an integer");
  return obj[key].get<int>();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

}  // namespace

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

RunConfig parse_config_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config root must be a JSON object");

  reject_unknown_keys(root, "config",
                      {"gamma3N", "tau", "generation_amplitude", "grid", "ensembles", "rank",
                       "sweep", "timedomain", "dynamics"});

  RunConfig cfg;
  cfg.params.gamma3N = require_number(root, "config", "gamma3N");
  cfg.params.tau = require_number(root, "config", "tau");
  cfg.params.generation_amplitude =
      optional_number(root, "config", "generation_amplitude", cfg.params.generation_amplitude);
  try {
    cfg.params.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid physical parameters: ") + e.what());
  }
  cfg.drive.tau = cfg.params.tau;

  if (root.contains("grid")) {
    const json& g = root["grid"];
    if (!g.is_object()) throw ConfigError("field \"grid\" must be an object");
    reject_unknown_keys(g, "grid", {"lo", "hi", "n"});
    cfg.grid.lo = optional_number(g, "grid", "lo", cfg.grid.lo);
    cfg.grid.hi = optional_number(g, "grid", "hi", cfg.grid.hi);
    cfg.grid.n = optional_int(g, "grid", "n", cfg.grid.n);
    if (!(cfg.grid.lo < cfg.grid.hi)) throw ConfigError("grid: \"lo\" must be < \"hi\"");
    if (cfg.grid.n < 2) throw ConfigError("grid: \"n\" must be >= 2");
  }

  if (root.contains("ensembles")) {
    const json& arr = root["ensembles"];
    if (!arr.is_array() || arr.empty())
      throw ConfigError("field \"ensembles\" must be a nonempty array");
    cfg.ensembles.ensembles.clear();
    int idx = 0;
    for (const auto& item : arr) {
      const std::string where = "ensembles[" + std::to_string(idx) + "]";
      if (!item.is_object()) throw ConfigError(where + " must be an object");
      reject_unknown_keys(item, where, {"dp", "dq", "weight_re", "weight_im"});
      EnsembleShift e;
      e.dp = require_number(item, where, "dp");
      e.dq = require_number(item, where, "dq");
      e.weight = {optional_number(item, where, "weight_re", 1.0),
                  optional_number(item, where, "weight_im", 0.0)};
      cfg.ensembles.ensembles.push_back(e);
      ++idx;
    }
  }

  if (root.contains("rank")) {
    cfg.rank = optional_int(root, "config", "rank", cfg.rank);
    if (cfg.rank < 1) throw ConfigError("\"rank\" must be >= 1");
  }

  if (root.contains("sweep")) {
    const json& s = root["sweep"];
    if (!s.is_object()) throw ConfigError("field \"sweep\" must be an object");
    reject_unknown_keys(s, "sweep",
                        {"family", "n_mp", "dp1_start", "dp1_stop", "steps", "scaling_n_mp"});
    if (s.contains("family")) {
      if (!s["family"].is_string())
        throw ConfigError("sweep: \"family\" must be \"symmetric\" or \"nonsymmetric\"");
      const std::string fam = s["family"].get<std::string>();
      if (fam == "symmetric")
        cfg.sweep.family = ShiftFamily::symmetric;
      else if (fam == "nonsymmetric")
        cfg.sweep.family = ShiftFamily::nonsymmetric;
      else
        throw ConfigError("sweep: \"family\" must be \"symmetric\" or \"nonsymmetric\"");
    }
    cfg.sweep.n_mp = optional_int(s, "sweep", "n_mp", cfg.sweep.n_mp);
    cfg.sweep.dp1_start = optional_number(s, "sweep", "dp1_start", cfg.sweep.dp1_start);
    cfg.sweep.dp1_stop = optional_number(s, "sweep", "dp1_stop", cfg.sweep.dp1_stop);
    cfg.sweep.steps = optional_int(s, "sweep", "steps", cfg.sweep.steps);
    if (cfg.sweep.n_mp < 1) throw ConfigError("sweep: \"n_mp\" must be >= 1");
    if (cfg.sweep.steps < 1) throw ConfigError("sweep: \"steps\" must be >= 1");
    if (!(cfg.sweep.dp1_stop >= cfg.sweep.dp1_start))
      throw ConfigError("sweep: \"dp1_stop\" must be >= \"dp1_start\"");
    if (s.contains("scaling_n_mp")) {
      if (!s["scaling_n_mp"].is_array())
        throw ConfigError("sweep: \"scaling_n_mp\" must be an array of integers");
      for (const auto& v : s["scaling_n_mp"]) {
        if (!v.is_number_integer() || v.get<int>() < 1)
          throw ConfigError("sweep: \"scaling_n_mp\" entries must be integers >= 1");
        cfg.sweep.scaling_n_mp.push_back(v.get<int>());
      }
    }
  }

  if (root.contains("timedomain")) {
    const json& t = root["timedomain"];
    if (!t.is_object()) throw ConfigError("field \"timedomain\" must be an object");
    reject_unknown_keys(t, "timedomain", {"t_lo", "t_hi", "n_t", "rank"});
    cfg.timedomain.t_lo = optional_number(t, "timedomain", "t_lo", 0.0);
    cfg.timedomain.t_hi = optional_number(t, "timedomain", "t_hi", 0.0);
    cfg.timedomain.n_t = optional_int(t, "timedomain", "n_t", 0);
    cfg.timedomain.rank = optional_int(t, "timedomain", "rank", cfg.timedomain.rank);
    if (cfg.timedomain.rank < 1) throw ConfigError("timedomain: \"rank\" must be >= 1");
  }

  if (root.contains("dynamics")) {
    const json& d = root["dynamics"];
    if (!d.is_object()) throw ConfigError("field \"dynamics\" must be an object");
    reject_unknown_keys(d, "dynamics", {"omega_a_area", "omega_b_area", "delta1", "delta2", "dt"});
    cfg.drive.omega_a_area = optional_number(d, "dynamics", "omega_a_area", cfg.drive.omega_a_area);
    cfg.drive.omega_b_area = optional_number(d, "dynamics", "omega_b_area", cfg.drive.omega_b_area);
    cfg.drive.delta1 = optional_number(d, "dynamics", "delta1", cfg.drive.delta1);
    cfg.drive.delta2 = optional_number(d, "dynamics", "delta2", cfg.drive.delta2);
    cfg.dynamics_dt = optional_number(d, "dynamics", "dt", cfg.dynamics_dt);
    if (!(cfg.dynamics_dt > 0.0)) throw ConfigError("dynamics: \"dt\" must be > 0");
    try {
      cfg.drive.validate();
    } catch (const std::exception& e) {
      throw ConfigError(std::string("invalid dynamics parameters: ") + e.what());
    }
  }

  try {
    cfg.ensembles.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid ensembles: ") + e.what());
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string default_config_json() {
  const RunConfig cfg;
  json root;
  root["gamma3N"] = cfg.params.gamma3N;
  root["tau"] = cfg.params.tau;
  root["generation_amplitude"] = cfg.params.generation_amplitude;
  root["grid"] = {{"lo", cfg.grid.lo}, {"hi", cfg.grid.hi}, {"n", cfg.grid.n}};
  root["ensembles"] = json::array();
  for (const auto& e : cfg.ensembles.ensembles)
    root["ensembles"].push_back({{"dp", e.dp},
                                 {"dq", e.dq},
                                 {"weight_re", e.weight.real()},
                                 {"weight_im", e.weight.imag()}});
  root["rank"] = cfg.rank;
  root["sweep"] = {{"family", cfg.sweep.family == ShiftFamily::symmetric ? "symmetric" : "nonsymmetric"},
                   {"n_mp", cfg.sweep.n_mp},
                   {"dp1_start", cfg.sweep.dp1_start},
                   {"dp1_stop", cfg.sweep.dp1_stop},
                   {"steps", cfg.sweep.steps},
                   {"scaling_n_mp", cfg.sweep.scaling_n_mp}};
  root["timedomain"] = {{"t_lo", cfg.timedomain.t_lo},
                        {"t_hi", cfg.timedomain.t_hi},
                        {"n_t", cfg.timedomain.n_t},
                        {"rank", cfg.timedomain.rank}};
  root["dynamics"] = {{"omega_a_area", cfg.drive.omega_a_area},
                      {"omega_b_area", cfg.drive.omega_b_area},
                      {"delta1", cfg.drive.delta1},
                      {"delta2", cfg.drive.delta2},
                      {"dt", cfg.dynamics_dt}};
  return root.dump(2) + "\n";
}

void write_spectrum_csv(const std::string& path, const JointSpectrum& js) {
  auto out = open_out(path);
  out << "dws,dwi,re,im,abs2\n";
  for (int j = 0; j < js.amplitude.rows(); ++j)
    for (int k = 0; k < js.amplitude.cols(); ++k) {
      const auto v = js.amplitude(j, k);
      out << format_g17(js.signal_grid.nodes[j]) << ',' << format_g17(js.idler_grid.nodes[k]) << ','
          << format_g17(v.real()) << ',' << format_g17(v.imag()) << ',' << format_g17(std::norm(v))
          << '\n';
    }
}

void write_schmidt_json(const std::string& path, const SchmidtResult& r) {
  json root;
  root["eigenvalues"] = json::array();
  for (int i = 0; i < r.eigenvalues.size(); ++i) root["eigenvalues"].push_back(r.eigenvalues(i));
  root["entropy_bits"] = r.entropy_bits;
  root["schmidt_number"] = r.schmidt_number;
  root["pairs"] = json::array();
  for (const auto& p : r.pairs) root["pairs"].push_back({p.first, p.second, p.rel_gap});
  root["reconstruction_error"] = r.reconstruction_error;
  root["tail_mass"] = r.tail_mass;
  auto out = open_out(path);
  out << root.dump(2) << "\n";
}

void write_modes_csv(const std::string& path, const FrequencyGrid& grid,
                     const Eigen::MatrixXcd& modes, const std::string& symbol) {
  auto out = open_out(path);
  out << "omega";
  for (int n = 0; n < modes.cols(); ++n)
    out << ",re_" << symbol << "_" << n + 1 << ",im_" << symbol << "_" << n + 1;
  out << '\n';
  for (int j = 0; j < modes.rows(); ++j) {
    out << format_g17(grid.nodes[j]);
    for (int n = 0; n < modes.cols(); ++n)
      out << ',' << format_g17(modes(j, n).real()) << ',' << format_g17(modes(j, n).imag());
    out << '\n';
  }
}

void write_time_csv(const std::string& path, const TimeModes& tm) {
  auto out = open_out(path);
  out << "t";
  for (int n = 0; n < tm.modes.cols(); ++n) out << ",abs2_mode" << n + 1;
  out << '\n';
  for (int i = 0; i < tm.time_grid.size(); ++i) {
    out << format_g17(tm.time_grid(i));
    for (int n = 0; n < tm.modes.cols(); ++n) out << ',' << format_g17(std::norm(tm.modes(i, n)));
    out << '\n';
  }
}

void write_periods_json(const std::string& path, const std::vector<double>& signal_periods,
                        const std::vector<double>& idler_periods) {
  json root;
  auto encode = [](const std::vector<double>& v) {
    json arr = json::array();
    for (double p : v) {
      if (std::isnan(p))
        arr.push_back(nullptr);
      else
        arr.push_back(p);
    }
    return arr;
  };
  root["signal_dominant_periods"] = encode(signal_periods);
  root["idler_dominant_periods"] = encode(idler_periods);
  auto out = open_out(path);
  out << root.dump(2) << "\n";
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
  auto out = open_out(path);
  out << "dp1,S_bits,K";
  for (int n = 1; n <= 8; ++n) out << ",lambda" << n;
  out << ",in_window\n";
  for (const auto& r : rows) {
    out << format_g17(r.dp1) << ',' << format_g17(r.entropy_bits) << ','
        << format_g17(r.schmidt_number);
    for (double l : r.lambdas) out << ',' << format_g17(l);
    out << ',' << (r.in_window ? 1 : 0) << '\n';
  }
}

void write_scaling_json(const std::string& path, const ScalingFit& fit) {
  json root;
  root["n_mp"] = fit.n_mp;
  root["s_max"] = fit.s_max;
  root["k_max"] = fit.k_max;
  root["s_excess"] = fit.s_excess;
  root["k_slope"] = fit.k_slope;
  root["k_intercept"] = fit.k_intercept;
  root["k_rel_residual"] = fit.k_rel_residual;
  auto out = open_out(path);
  out << root.dump(2) << "\n";
}

void write_verify_json(const std::string& path, const VerifyReport& rep) {
  json root;
  root["pass"] = rep.pass;
  root["max_oracle_deviation"] = rep.max_oracle_deviation;
  root["checks"] = json::array();
  for (const auto& c : rep.checks)
    root["checks"].push_back(
        {{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"pass", c.pass}});
  auto out = open_out(path);
  out << root.dump(2) << "\n";
}

namespace {

// Dark-blue to yellow ramp, perceptually monotone enough for a heatmap.
void colormap(double v, int& r, int& g, int& b) {
  static const double stops[6][3] = {{0.06, 0.02, 0.23}, {0.23, 0.12, 0.44}, {0.34, 0.29, 0.55},
                                     {0.13, 0.56, 0.55}, {0.37, 0.78, 0.38}, {0.99, 0.91, 0.14}};
  v = std::clamp(v, 0.0, 1.0);
  const double x = v * 5.0;
  const int i = std::min(4, static_cast<int>(x));
  const double f = x - i;
  r = static_cast<int>(255.0 * (stops[i][0] + f * (stops[i + 1][0] - stops[i][0])));
  g = static_cast<int>(255.0 * (stops[i][1] + f * (stops[i + 1][1] - stops[i][1])));
  b = static_cast<int>(255.0 * (stops[i][2] + f * (stops[i + 1][2] - stops[i][2])));
}

}  // namespace

void write_heatmap_svg(const std::string& path, const JointSpectrum& js, int max_cells) {
  const int ns = static_cast<int>(js.amplitude.rows());
  const int ni = static_cast<int>(js.amplitude.cols());
  const int bx = std::max(1, (ns + max_cells - 1) / max_cells);
  const int by = std::max(1, (ni + max_cells - 1) / max_cells);
  const int cx = (ns + bx - 1) / bx;
  const int cy = (ni + by - 1) / by;

  std::vector<double> cells(static_cast<std::size_t>(cx) * cy, 0.0);
  double vmax = 0.0;
  for (int a = 0; a < cx; ++a)
    for (int b = 0; b < cy; ++b) {
      double acc = 0.0;
      int count = 0;
      for (int j = a * bx; j < std::min(ns, (a + 1) * bx); ++j)
        for (int k = b * by; k < std::min(ni, (b + 1) * by); ++k) {
          acc += std::norm(js.amplitude(j, k));
          ++count;
        }
      cells[a * cy + b] = acc / count;
      vmax = std::max(vmax, cells[a * cy + b]);
    }
  if (vmax <= 0.0) vmax = 1.0;

  const int plot = 560, mleft = 60, mbot = 42, mtop = 16, mright = 16;
  const double px = static_cast<double>(plot) / cx, py = static_cast<double>(plot) / cy;
  auto out = open_out(path);
  char buf[256];
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << plot + mleft + mright
      << "\" height=\"" << plot + mtop + mbot << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (int a = 0; a < cx; ++a)
    for (int b = 0; b < cy; ++b) {
      int r, g, bl;
      colormap(cells[a * cy + b] / vmax, r, g, bl);
      // signal on x, idler on y, y axis pointing up
      std::snprintf(buf, sizeof buf,
                    "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" fill=\"rgb(%d,%d,%d)\"/>\n",
                    mleft + a * px, mtop + plot - (b + 1) * py, px + 0.5, py + 0.5, r, g, bl);
      out << buf;
    }
  std::snprintf(buf, sizeof buf,
                "<text x=\"%d\" y=\"%d\" font-size=\"13\" text-anchor=\"middle\">signal detuning "
                "[%.6g, %.6g]</text>\n",
                mleft + plot / 2, plot + mtop + 30, js.signal_grid.lo, js.signal_grid.hi);
  out << buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"14\" y=\"%d\" font-size=\"13\" text-anchor=\"middle\" "
                "transform=\"rotate(-90 14 %d)\">idler detuning [%.6g, %.6g]</text>\n",
                mtop + plot / 2, mtop + plot / 2, js.idler_grid.lo, js.idler_grid.hi);
  out << buf;
  out << "</svg>\n";
}

void write_lines_svg(const std::string& path, const std::vector<double>& x,
                     const std::vector<std::vector<double>>& series, const std::string& x_label,
                     const std::string& y_label) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  double ymin = 0.0, ymax = 1e-300;
  for (const auto& s : series)
    for (double v : s) {
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  if (!(ymax > ymin)) ymax = ymin + 1.0;
  const double xmin = x.front(), xmax = x.back();

  const int w = 640, h = 420, mleft = 60, mbot = 42, mtop = 14, mright = 14;
  const int pw = w - mleft - mright, ph = h - mtop - mbot;
  auto out = open_out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  char buf[128];
  for (std::size_t s = 0; s < series.size(); ++s) {
    out << "<polyline fill=\"none\" stroke=\"" << palette[s % 8] << "\" stroke-width=\"1.4\" points=\"";
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double px = mleft + pw * (x[i] - xmin) / (xmax - xmin);
      const double py = mtop + ph * (1.0 - (series[s][i] - ymin) / (ymax - ymin));
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px, py);
      out << buf;
    }
    out << "\"/>\n";
  }
  std::snprintf(buf, sizeof buf, "<text x=\"%d\" y=\"%d\" font-size=\"13\" text-anchor=\"middle\">",
                mleft + pw / 2, h - 10);
  out << buf << x_label << "</text>\n";
  std::snprintf(buf, sizeof buf,
                "<text x=\"14\" y=\"%d\" font-size=\"13\" text-anchor=\"middle\" "
                "transform=\"rotate(-90 14 %d)\">",
                mtop + ph / 2, mtop + ph / 2);
  out << buf << y_label << "</text>\n";
  std::snprintf(buf, sizeof buf,
                "<text x=\"%d\" y=\"%d\" font-size=\"11\">x: [%.6g, %.6g]  y: [%.6g, %.6g]</text>\n",
                mleft, mtop + 10, xmin, xmax, ymin, ymax);
  out << buf;
  out << "</svg>\n";
}

}  // namespace biphoton
