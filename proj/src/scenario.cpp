#include "nonbark/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>

#include <json.hpp>

#include "nonbark/atombath.hpp"
#include "nonbark/checks.hpp"
#include "nonbark/errors.hpp"
#include "nonbark/parallel.hpp"
#include "nonbark/pdeoracle.hpp"
#include "nonbark/tunneling.hpp"
#include "nonbark/version.hpp"

namespace nonbark {

std::string model_name(Model m) {
  switch (m) {
    case Model::atom_decay: return "atom_decay";
    case Model::tunnel_closed: return "tunnel_closed";
    case Model::tunnel_quadrature: return "tunnel_quadrature";
    case Model::tunnel_pde: return "tunnel_pde";
    case Model::checks: return "checks";
  }
  return "unknown";
}

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& why) {
  throw ConfigError(path + ": " + why);
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "must be a number");
  return v.get<double>();
}

int as_int(const json& v, const std::string& path) {
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_number_float()) {
    double d = v.get<double>();
    if (d == std::floor(d) && std::fabs(d) <= 1e9) {
      return static_cast<int>(d);
    }
  }
  fail(path, "must be an integer");
}

void check_keys(const json& obj, const std::string& path,
                const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key)) fail(path.empty() ? key : path + "." + key,
                                  "unknown field");
  }
}

Model parse_model_name(const std::string& s) {
  if (s == "atom_decay") return Model::atom_decay;
  if (s == "tunnel_closed") return Model::tunnel_closed;
  if (s == "tunnel_quadrature") return Model::tunnel_quadrature;
  if (s == "tunnel_pde") return Model::tunnel_pde;
  if (s == "checks") return Model::checks;
  fail("model", "unknown model '" + s + "'");
}

void parse_params(const json& obj, ScenarioConfig& c) {
  if (!obj.is_object()) fail("params", "must be an object");
  bool atom = c.model == Model::atom_decay;
  std::set<std::string> allowed =
      atom ? std::set<std::string>{"gamma", "n_side", "band", "level"}
           : std::set<std::string>{"b", "mu", "kappa", "k0", "L"};
  check_keys(obj, "params", allowed);
  std::vector<std::string> required =
      atom ? std::vector<std::string>{"gamma", "n_side"}
           : std::vector<std::string>{"b", "mu", "kappa", "k0", "L"};
  for (const auto& key : required) {
    if (!obj.contains(key)) fail("params." + key, "required");
  }
  for (const auto& [key, value] : obj.items()) {
    std::string path = "params." + key;
    if (key == "n_side" || key == "level") {
      c.params[key] = as_int(value, path);
    } else {
      c.params[key] = as_number(value, path);
    }
  }
  if (atom) {
    if (!c.params.count("band")) c.params["band"] = 0.0;
    if (!c.params.count("level")) c.params["level"] = 0.0;
  }
}

GridSpec parse_grid(const json& obj, const std::string& path,
                    bool allow_centered) {
  if (!obj.is_object()) fail(path, "must be an object");
  check_keys(obj, path, {"min", "max", "half_width", "points"});
  GridSpec spec;
  spec.present = true;
  if (!obj.contains("points")) fail(path + ".points", "required");
  spec.points = as_int(obj.at("points"), path + ".points");
  if (spec.points < 1) fail(path + ".points", "must be >= 1");
  if (obj.contains("half_width")) {
    if (!allow_centered) fail(path + ".half_width", "not valid here");
    if (obj.contains("min") || obj.contains("max")) {
      fail(path, "half_width excludes min/max");
    }
    spec.centered = true;
    spec.half_width = as_number(obj.at("half_width"), path + ".half_width");
    if (spec.half_width <= 0.0) fail(path + ".half_width", "must be > 0");
    return spec;
  }
  bool has_min = obj.contains("min"), has_max = obj.contains("max");
  if (has_min != has_max) fail(path, "min and max come together");
  if (has_min) {
    spec.min = as_number(obj.at("min"), path + ".min");
    spec.max = as_number(obj.at("max"), path + ".max");
    if (spec.max <= spec.min) fail(path + ".max", "must exceed min");
  } else {
    spec.centered = false;
    spec.min = spec.max = 0.0;  // caller fills in defaults
  }
  return spec;
}

std::vector<double> linspace(double lo, double hi, int points) {
  std::vector<double> xs(static_cast<size_t>(points));
  if (points == 1) {
    xs[0] = lo;
    return xs;
  }
  double step = (hi - lo) / (points - 1);
  for (int i = 0; i < points; ++i) xs[static_cast<size_t>(i)] = lo + step * i;
  return xs;
}

TunnelParams tunnel_params_from(const ScenarioConfig& c) {
  return {c.params.at("b"), c.params.at("mu"), c.params.at("kappa"),
          c.params.at("k0"), c.params.at("L")};
}

}  // namespace

ScenarioConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("document: not valid JSON (") + e.what() +
                      ")");
  }
  if (!doc.is_object()) fail("document", "must be a JSON object");
  if (!doc.contains("model")) fail("model", "required");
  if (!doc.at("model").is_string()) fail("model", "must be a string");

  ScenarioConfig c;
  c.model = parse_model_name(doc.at("model").get<std::string>());

  std::set<std::string> allowed{"model", "format", "seed"};
  switch (c.model) {
    case Model::atom_decay:
      allowed.insert({"params", "window", "grid", "sweep"});
      break;
    case Model::tunnel_closed:
      allowed.insert({"params", "T_over_Lv", "spots", "grid"});
      break;
    case Model::tunnel_quadrature:
    case Model::tunnel_pde:
      allowed.insert({"params", "T_over_Lv", "t_over_Lv", "grid"});
      break;
    case Model::checks:
      allowed.insert({"fast_only"});
      break;
  }
  check_keys(doc, "", allowed);

  if (doc.contains("format")) {
    if (!doc.at("format").is_string()) fail("format", "must be a string");
    c.format = doc.at("format").get<std::string>();
    if (c.format != "csv" && c.format != "json") {
      fail("format", "must be csv or json");
    }
  }
  if (doc.contains("seed")) {
    long long seed = as_int(doc.at("seed"), "seed");
    if (seed < 0) fail("seed", "must be >= 0");
    c.seed = static_cast<unsigned long>(seed);
  }
  if (doc.contains("params")) parse_params(doc.at("params"), c);

  switch (c.model) {
    case Model::atom_decay: {
      if (!doc.contains("params")) fail("params", "required");
      if (doc.contains("window")) {
        const json& w = doc.at("window");
        if (!w.is_object()) fail("window", "must be an object");
        check_keys(w, "window", {"t_i", "t_f"});
        if (!w.contains("t_i") || !w.contains("t_f")) {
          fail("window", "needs t_i and t_f");
        }
        c.t_i = as_number(w.at("t_i"), "window.t_i");
        c.t_f = as_number(w.at("t_f"), "window.t_f");
        if (c.t_f <= c.t_i) fail("window.t_f", "must exceed t_i");
        c.has_window = true;
      }
      if (doc.contains("sweep")) {
        c.sweep = parse_grid(doc.at("sweep"), "sweep", false);
        if (!c.sweep.points || c.sweep.points < 2) {
          fail("sweep.points", "must be >= 2");
        }
        if (c.sweep.min == c.sweep.max) fail("sweep", "needs min and max");
        if (c.sweep.min <= 0.0) fail("sweep.min", "must be > 0");
      }
      if (c.has_window == c.sweep.present) {
        fail("window", "exactly one of window and sweep is required");
      }
      if (doc.contains("grid")) {
        if (!c.has_window) fail("grid", "only valid with window");
        c.grid = parse_grid(doc.at("grid"), "grid", false);
        if (c.grid.min == c.grid.max && !c.grid.centered) {
          c.grid.min = c.t_i;
          c.grid.max = c.t_f;
        }
        if (c.grid.min < c.t_i || c.grid.max > c.t_f) {
          fail("grid", "must lie inside the window");
        }
      }
      break;
    }
    case Model::tunnel_closed:
    case Model::tunnel_quadrature:
    case Model::tunnel_pde: {
      if (!doc.contains("params")) fail("params", "required");
      if (!doc.contains("T_over_Lv")) fail("T_over_Lv", "required");
      c.big_t_over_lv = as_number(doc.at("T_over_Lv"), "T_over_Lv");
      if (c.big_t_over_lv <= 0.0) fail("T_over_Lv", "must be > 0");
      if (doc.contains("t_over_Lv")) {
        c.t_over_lv = as_number(doc.at("t_over_Lv"), "t_over_Lv");
        if (c.t_over_lv <= 0.0 || c.t_over_lv >= c.big_t_over_lv) {
          fail("t_over_Lv", "must lie strictly inside (0, T_over_Lv)");
        }
      }
      if (doc.contains("spots")) {
        const json& arr = doc.at("spots");
        if (!arr.is_array() || arr.empty()) {
          fail("spots", "must be a non-empty array");
        }
        for (size_t i = 0; i < arr.size(); ++i) {
          std::string path = "spots[" + std::to_string(i) + "]";
          const json& entry = arr[i];
          if (!entry.is_object()) fail(path, "must be an object");
          check_keys(entry, path, {"n", "m"});
          if (!entry.contains("n") || !entry.contains("m")) {
            fail(path, "needs n and m");
          }
          SpotRequest req{as_int(entry.at("n"), path + ".n"),
                          as_int(entry.at("m"), path + ".m")};
          if (req.n < 1 || req.m < 1) fail(path, "indices start at 1");
          c.spots.push_back(req);
        }
      }
      if (doc.contains("grid")) {
        c.grid = parse_grid(doc.at("grid"), "grid",
                            c.model == Model::tunnel_closed);
        if (!c.grid.centered && c.grid.min == c.grid.max) {
          fail("grid", "needs min/max or half_width");
        }
      }
      if (c.model != Model::tunnel_closed && !c.grid.present) {
        fail("grid", "required");
      }
      break;
    }
    case Model::checks: {
      if (doc.contains("fast_only")) {
        if (!doc.at("fast_only").is_boolean()) {
          fail("fast_only", "must be a boolean");
        }
        c.fast_only = doc.at("fast_only").get<bool>();
      }
      break;
    }
  }
  return c;
}

void validate_config(const ScenarioConfig& c) {
  switch (c.model) {
    case Model::checks:
      return;
    case Model::atom_decay: {
      double gamma = c.params.at("gamma");
      int n_side = static_cast<int>(c.params.at("n_side"));
      double band = c.params.at("band");
      int level = static_cast<int>(c.params.at("level"));
      if (gamma <= 0.0) fail("params.gamma", "must be > 0");
      if (n_side < 1) fail("params.n_side", "must be >= 1");
      if (band < 0.0) fail("params.band", "must be >= 0");
      if (std::abs(level) > n_side) {
        fail("params.level", "must satisfy |level| <= n_side");
      }
      try {
        BathModel::calibrated(gamma, n_side, band);
      } catch (const Error& e) {
        fail("params", e.what());
      }
      return;
    }
    case Model::tunnel_closed:
    case Model::tunnel_quadrature:
    case Model::tunnel_pde: {
      TunnelParams p = tunnel_params_from(c);
      try {
        validate_params(p);
      } catch (const Error& e) {
        fail("params", e.what());
      }
      if (c.model == Model::tunnel_closed) {
        double big_t = c.big_t_over_lv * p.L / p.v();
        if (!supported_postselection_time(p, big_t)) {
          fail("T_over_Lv", "must equal 4 i + 2 for integer i >= 1");
        }
        if (!c.spots.empty()) {
          auto all = sweet_spots(p, big_t);
          for (size_t i = 0; i < c.spots.size(); ++i) {
            bool found = false;
            for (const auto& spot : all) {
              if (spot.n == c.spots[i].n && spot.m == c.spots[i].m) {
                found = true;
                break;
              }
            }
            if (!found) {
              fail("spots[" + std::to_string(i) + "]",
                   "no sweet spot (" + std::to_string(c.spots[i].n) + ", " +
                       std::to_string(c.spots[i].m) + ") at this T");
            }
          }
        }
      }
      if (c.model == Model::tunnel_pde && c.grid.min < -2.0 * p.L) {
        fail("grid.min", "below the wall at -2 L");
      }
      return;
    }
  }
}

namespace {

struct NamedSeries {
  std::string suffix;
  WeakValueSeries series;
};

void stamp_common(WeakValueSeries& s, const ScenarioConfig& c) {
  s.metadata["mode"] = model_name(c.model);
  s.metadata["version"] = kVersion;
  for (const auto& [key, value] : c.params) {
    s.metadata[key] = format_g17(value);
  }
}

std::vector<NamedSeries> build_atom(const ScenarioConfig& c) {
  BathModel m = BathModel::calibrated(c.params.at("gamma"),
                                      static_cast<int>(c.params.at("n_side")),
                                      c.params.at("band"));
  int level = static_cast<int>(c.params.at("level"));
  WeakValueSeries s;
  s.coordinate = "t";
  stamp_common(s, c);
  s.metadata["delta_e"] = format_g17(m.delta_e);
  s.metadata["coupling"] = format_g17(m.coupling);
  if (c.sweep.present) {
    // Growth study: weak value of the chosen level at the window midpoint
    // as the window length varies.
    s.metadata["sweep_min"] = format_g17(c.sweep.min);
    s.metadata["sweep_max"] = format_g17(c.sweep.max);
    for (double big_t : linspace(c.sweep.min, c.sweep.max, c.sweep.points)) {
      TimeWindow w{0.0, 0.5 * big_t, big_t};
      s.add(big_t, weak_value_bath(m, w, level, BathMode::analytic));
    }
  } else {
    s.metadata["t_i"] = format_g17(c.t_i);
    s.metadata["t_f"] = format_g17(c.t_f);
    double lo = c.grid.present ? c.grid.min : c.t_i;
    double hi = c.grid.present ? c.grid.max : c.t_f;
    int points = c.grid.present ? c.grid.points : 201;
    for (double t : linspace(lo, hi, points)) {
      TimeWindow w{c.t_i, t, c.t_f};
      s.add(t, weak_value_bath(m, w, level, BathMode::analytic));
    }
  }
  s.sort_samples();
  return {{"", std::move(s)}};
}

std::vector<SweetSpot> choose_spots(const std::vector<SweetSpot>& all,
                                    const std::vector<SpotRequest>& wanted) {
  if (wanted.empty()) return all;
  std::vector<SweetSpot> chosen;
  for (const auto& req : wanted) {
    for (const auto& spot : all) {
      if (spot.n == req.n && spot.m == req.m) {
        chosen.push_back(spot);
        break;
      }
    }
  }
  return chosen;
}

void stamp_spot(WeakValueSeries& s, const SweetSpot& spot) {
  s.metadata["spot_n"] = std::to_string(spot.n);
  s.metadata["spot_m"] = std::to_string(spot.m);
  s.metadata["spot_N"] = std::to_string(spot.big_n);
  s.metadata["spot_M"] = std::to_string(spot.big_m);
  s.metadata["spot_x"] = format_g17(spot.x);
  s.metadata["spot_t"] = format_g17(spot.t);
}

std::vector<NamedSeries> build_tunnel_closed(const ScenarioConfig& c,
                                             const TunnelParams& p,
                                             int jobs) {
  double big_t = c.big_t_over_lv * p.L / p.v();
  std::vector<SweetSpot> chosen =
      choose_spots(sweet_spots(p, big_t), c.spots);
  if (!c.grid.present) {
    // Spot catalogue: one sample per sweet spot, closed form at the center.
    WeakValueSeries s;
    s.coordinate = "t";
    stamp_common(s, c);
    s.metadata["T_over_Lv"] = format_g17(c.big_t_over_lv);
    for (const auto& spot : chosen) {
      s.add(spot.t, weak_value_sweetspot(p, spot.n, spot.m, spot.big_n,
                                         spot.big_m, spot.x));
    }
    s.sort_samples();
    return {{"", std::move(s)}};
  }
  std::vector<WeakValueSeries> per(chosen.size());
  parallel_for_indexed(chosen.size(), jobs, [&](size_t i) {
    const SweetSpot& spot = chosen[i];
    double lo = c.grid.centered ? spot.x - c.grid.half_width : c.grid.min;
    double hi = c.grid.centered ? spot.x + c.grid.half_width : c.grid.max;
    WeakValueSeries s;
    s.coordinate = "x";
    stamp_common(s, c);
    s.metadata["T_over_Lv"] = format_g17(c.big_t_over_lv);
    stamp_spot(s, spot);
    for (double x : linspace(lo, hi, c.grid.points)) {
      s.add(x, weak_value_sweetspot(p, spot.n, spot.m, spot.big_n,
                                    spot.big_m, x));
    }
    per[i] = std::move(s);
  });
  std::vector<NamedSeries> out;
  for (size_t i = 0; i < chosen.size(); ++i) {
    std::string suffix =
        chosen.size() == 1 ? ""
                           : "_spot_" + std::to_string(chosen[i].n) + "_" +
                                 std::to_string(chosen[i].m);
    out.push_back({suffix, std::move(per[i])});
  }
  return out;
}

std::vector<NamedSeries> build_tunnel_quadrature(const ScenarioConfig& c,
                                                 const TunnelParams& p) {
  double lv = p.L / p.v();
  double big_t = c.big_t_over_lv * lv;
  double t = c.t_over_lv < 0.0 ? 0.5 * big_t : c.t_over_lv * lv;
  std::vector<double> xs = linspace(c.grid.min, c.grid.max, c.grid.points);
  std::vector<Complex> ws = weak_value_numeric_grid(p, xs, t, big_t);
  WeakValueSeries s;
  s.coordinate = "x";
  stamp_common(s, c);
  s.metadata["T_over_Lv"] = format_g17(c.big_t_over_lv);
  s.metadata["t_over_Lv"] = format_g17(t / lv);
  for (size_t i = 0; i < xs.size(); ++i) s.add(xs[i], ws[i]);
  s.sort_samples();
  return {{"", std::move(s)}};
}

std::vector<NamedSeries> build_tunnel_pde(const ScenarioConfig& c,
                                          const TunnelParams& p) {
  double lv = p.L / p.v();
  double big_t = c.big_t_over_lv * lv;
  double t = c.t_over_lv < 0.0 ? 0.5 * big_t : c.t_over_lv * lv;
  Grid solver = scaled_oracle_grid(p, std::max(t, big_t - t));
  if (solver.x_max < c.grid.max) {
    double dx = solver.dx();
    int n_points =
        static_cast<int>(std::ceil((c.grid.max - solver.x_min) / dx)) + 1;
    solver = Grid{solver.x_min, solver.x_min + dx * (n_points - 1), n_points,
                  solver.dt};
  }
  std::vector<double> xs = linspace(c.grid.min, c.grid.max, c.grid.points);
  PdeWeakResult run = weak_value_pde_run(xs, t, big_t, p, solver);
  WeakValueSeries s = std::move(run.series);
  stamp_common(s, c);
  s.metadata["T_over_Lv"] = format_g17(c.big_t_over_lv);
  s.metadata["abs_denominator"] = format_g17(std::abs(run.denominator));
  return {{"", std::move(s)}};
}

}  // namespace

RunResult run_scenario(const ScenarioConfig& config,
                       const RunOptions& options) {
  validate_config(config);
  std::string fmt =
      options.format_override.empty() ? config.format : options.format_override;
  if (fmt != "csv" && fmt != "json") {
    throw ConfigError("format: must be csv or json");
  }
  std::string out_dir = options.out_dir.empty() ? "." : options.out_dir;
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory: " + out_dir);
  std::string stem = options.stem.empty() ? model_name(config.model)
                                          : options.stem;

  RunResult result;
  int jobs = options.jobs > 0 ? options.jobs : default_jobs();
  if (config.model == Model::checks) {
    auto checks = run_checks(config.fast_only, config.seed, jobs);
    std::string path = out_dir + "/" + stem + "_report.json";
    write_text_file(
        path, checks_report_json(checks, config.fast_only, config.seed));
    result.files.push_back(path);
    for (const auto& r : checks) {
      result.notes.push_back(std::string(r.passed ? "PASS " : "FAIL ") +
                             r.name + ": " + r.detail);
    }
    result.exit_code = all_passed(checks) ? 0 : 1;
    return result;
  }

  std::vector<NamedSeries> series;
  if (config.model == Model::atom_decay) {
    series = build_atom(config);
  } else {
    TunnelParams p = tunnel_params_from(config);
    double big_t = config.big_t_over_lv * p.L / p.v();
    for (const auto& warning : p.regime_warnings(big_t)) {
      result.notes.push_back("advisory: " + warning);
    }
    switch (config.model) {
      case Model::tunnel_closed:
        series = build_tunnel_closed(config, p, jobs);
        break;
      case Model::tunnel_quadrature:
        series = build_tunnel_quadrature(config, p);
        break;
      default:
        series = build_tunnel_pde(config, p);
        break;
    }
  }

  for (auto& [suffix, s] : series) {
    std::string path = out_dir + "/" + stem + suffix + "." + fmt;
    write_text_file(path, fmt == "csv" ? to_csv(s) : to_json(s));
    result.files.push_back(path);
  }
  return result;
}

}  // namespace nonbark
