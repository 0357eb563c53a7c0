// Copyright 2026 The cobo Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// =============================================================================

#ifndef COBO_CONFIG_HPP
#define COBO_CONFIG_HPP

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cobo/codesign.hpp"
#include "cobo/econ.hpp"

namespace cobo {

/// Process exit codes used by the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitRuntime = 1,
  kExitUsage = 2,
  kExitMissingFile = 3,
  kExitParse = 4,
  kExitValidation = 5,
};

/// Configuration problem with the exit code the tool should return.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ExitCode code() const { return code_; }

 private:
  ExitCode code_;
};

/// Everything a run needs, in plain types so it compares and round-trips
/// exactly. Library configs are derived from it by the to_* functions.
struct RunConfig {
  // [run]
  std::string mode = "codesign";  // codesign | bo | batch-bo | econ | simulate
  std::string objective = "plantsim";
  std::uint64_t seed = 0;
  std::string out = "results";

  // [domain] box for the bo / batch-bo objectives (quadratic, branin)
  std::vector<double> lower{0.0, 0.0};
  std::vector<double> upper{1.0, 1.0};

  // [bo] the (outer) optimizer
  int batch_size = 1;
  int initial_points = 2;
  int budget = 60;
  double epsilon = 1e-3;
  int window = 2;
  bool standardized = true;
  std::string convergence_on = "incumbent";  // incumbent | iteration-best
  bool parallel = true;

  // [gp]
  int restarts = 8;
  double lengthscale_min = 5e-3;
  double lengthscale_max = 50.0;
  bool fit_noise = true;
  double noise_floor = 1e-8;

  // [search]
  int screening_per_dim = 2048;
  int top_k = 5;
  int refine_iterations = 200;
  double initial_step = 0.05;
  int lipschitz_samples_per_dim = 1024;

  // [codesign]
  std::vector<double> plant_lower{-0.5, 0.5};
  std::vector<double> plant_upper{0.5, 2.0};
  double control_lower = -0.2;
  double control_upper = 0.35;
  int inner_initial_points = 2;
  int inner_max_windows = 20;
  double inner_epsilon = 1e-3;
  int inner_window = 2;

  // [window]
  double settle = 60.0;
  double performance = 120.0;
  double update = 0.0;

  // [objective]
  double k1 = 1.0, k2 = 1.0, k3 = 1.0;
  std::vector<double> synthetic_plant_target{0.3, 0.7};
  double synthetic_control_offset = 0.2;
  std::vector<double> synthetic_coupling{0.4, 0.3};
  double synthetic_scale = 1.0;
  std::vector<double> quadratic_center{0.3, 0.7};

  // [plantsim]
  double dt = 0.01;
  double control_rate = 10.0;
  bool wind = true;
  bool damping = true;
  bool random_wind_phase = false;
  double v_base = 0.606;
  double v_x0 = 0.0866;
  double v_y0 = 0.065;
  double v_z0 = 0.0087;
  double omega = 2.0 * std::numbers::pi;
  double cm_offset = 0.0;
  double stab_area = 1.0;
  double pitch_setpoint = 0.1;
  double duration = 180.0;
  double cost_begin = 60.0;

  // [econ]
  econ::EconParams econ;
  std::vector<econ::Scenario> scenarios = econ::reference_scenarios();

  bool operator==(const RunConfig&) const = default;
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline double parse_double(const std::string& s, const std::string& key) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto r = std::from_chars(s.data(), end, v);
  if (s.empty() || r.ec != std::errc() || r.ptr != end || !std::isfinite(v))
    throw ConfigError(kExitParse, "config: key '" + key + "': expected a finite number, got '" + s + "'");
  return v;
}

template <typename Int>
Int parse_int(const std::string& s, const std::string& key) {
  Int v{};
  const auto* end = s.data() + s.size();
  const auto r = std::from_chars(s.data(), end, v);
  if (s.empty() || r.ec != std::errc() || r.ptr != end)
    throw ConfigError(kExitParse, "config: key '" + key + "': expected an integer, got '" + s + "'");
  return v;
}

inline bool parse_bool(const std::string& s, const std::string& key) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw ConfigError(kExitParse, "config: key '" + key + "': expected true or false, got '" + s + "'");
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

inline std::vector<double> parse_list(const std::string& s, const std::string& key) {
  std::vector<double> out;
  for (const auto& item : split(s, ',')) out.push_back(parse_double(item, key));
  if (out.empty()) throw ConfigError(kExitParse, "config: key '" + key + "': empty list");
  return out;
}

inline std::string format_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format_double(v[i]);
  return out;
}

inline std::vector<econ::Scenario> parse_scenarios(const std::string& s, const std::string& key) {
  std::vector<econ::Scenario> out;
  for (const auto& item : split(s, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() != 2)
      throw ConfigError(kExitParse, "config: key '" + key + "': expected N:n_convergence pairs, got '" + item + "'");
    out.push_back({parse_int<int>(parts[0], key), parse_int<int>(parts[1], key)});
  }
  return out;
}

inline std::string format_scenarios(const std::vector<econ::Scenario>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out += (i ? ", " : "") + std::to_string(v[i].n_per_batch) + ":" + std::to_string(v[i].n_convergence);
  return out;
}

/// One configurable key: where it lives and how to read and write it.
struct Field {
  std::string section;
  std::string key;
  std::function<void(RunConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <typename T>
Field make_field(std::string section, std::string key, T RunConfig::*m) {
  Field f{std::move(section), std::move(key), {}, {}};
  f.set = [m](RunConfig& c, const std::string& v, const std::string& k) {
    if constexpr (std::is_same_v<T, double>) c.*m = parse_double(v, k);
    else if constexpr (std::is_same_v<T, bool>) c.*m = parse_bool(v, k);
    else if constexpr (std::is_same_v<T, int> || std::is_same_v<T, std::uint64_t>) c.*m = parse_int<T>(v, k);
    else if constexpr (std::is_same_v<T, std::string>) c.*m = v;
    else if constexpr (std::is_same_v<T, std::vector<double>>) c.*m = parse_list(v, k);
    else if constexpr (std::is_same_v<T, std::vector<econ::Scenario>>) c.*m = parse_scenarios(v, k);
  };
  f.get = [m](const RunConfig& c) -> std::string {
    if constexpr (std::is_same_v<T, double>) return format_double(c.*m);
    else if constexpr (std::is_same_v<T, bool>) return c.*m ? "true" : "false";
    else if constexpr (std::is_same_v<T, int> || std::is_same_v<T, std::uint64_t>) return std::to_string(c.*m);
    else if constexpr (std::is_same_v<T, std::string>) return c.*m;
    else if constexpr (std::is_same_v<T, std::vector<double>>) return format_list(c.*m);
    else if constexpr (std::is_same_v<T, std::vector<econ::Scenario>>) return format_scenarios(c.*m);
  };
  return f;
}

template <typename T>
Field econ_field(std::string key, T econ::EconParams::*m) {
  Field f{"econ", std::move(key), {}, {}};
  f.set = [m](RunConfig& c, const std::string& v, const std::string& k) {
    if constexpr (std::is_same_v<T, double>) c.econ.*m = parse_double(v, k);
    else c.econ.*m = parse_int<int>(v, k);
  };
  f.get = [m](const RunConfig& c) -> std::string {
    if constexpr (std::is_same_v<T, double>) return format_double(c.econ.*m);
    else return std::to_string(c.econ.*m);
  };
  return f;
}

}  // namespace detail

/// The full key schema in serialization order.
inline const std::vector<detail::Field>& config_schema() {
  using detail::make_field;
  using detail::econ_field;
  using R = RunConfig;
  static const std::vector<detail::Field> fields = {
      make_field("run", "mode", &R::mode),
      make_field("run", "objective", &R::objective),
      make_field("run", "seed", &R::seed),
      make_field("run", "out", &R::out),
      make_field("domain", "lower", &R::lower),
      make_field("domain", "upper", &R::upper),
      make_field("bo", "batch_size", &R::batch_size),
      make_field("bo", "initial_points", &R::initial_points),
      make_field("bo", "budget", &R::budget),
      make_field("bo", "epsilon", &R::epsilon),
      make_field("bo", "window", &R::window),
      make_field("bo", "standardized", &R::standardized),
      make_field("bo", "convergence_on", &R::convergence_on),
      make_field("bo", "parallel", &R::parallel),
      make_field("gp", "restarts", &R::restarts),
      make_field("gp", "lengthscale_min", &R::lengthscale_min),
      make_field("gp", "lengthscale_max", &R::lengthscale_max),
      make_field("gp", "fit_noise", &R::fit_noise),
      make_field("gp", "noise_floor", &R::noise_floor),
      make_field("search", "screening_per_dim", &R::screening_per_dim),
      make_field("search", "top_k", &R::top_k),
      make_field("search", "refine_iterations", &R::refine_iterations),
      make_field("search", "initial_step", &R::initial_step),
      make_field("search", "lipschitz_samples_per_dim", &R::lipschitz_samples_per_dim),
      make_field("codesign", "plant_lower", &R::plant_lower),
      make_field("codesign", "plant_upper", &R::plant_upper),
      make_field("codesign", "control_lower", &R::control_lower),
      make_field("codesign", "control_upper", &R::control_upper),
      make_field("codesign", "inner_initial_points", &R::inner_initial_points),
      make_field("codesign", "inner_max_windows", &R::inner_max_windows),
      make_field("codesign", "inner_epsilon", &R::inner_epsilon),
      make_field("codesign", "inner_window", &R::inner_window),
      make_field("window", "settle", &R::settle),
      make_field("window", "performance", &R::performance),
      make_field("window", "update", &R::update),
      make_field("objective", "k1", &R::k1),
      make_field("objective", "k2", &R::k2),
      make_field("objective", "k3", &R::k3),
      make_field("objective", "synthetic_plant_target", &R::synthetic_plant_target),
      make_field("objective", "synthetic_control_offset", &R::synthetic_control_offset),
      make_field("objective", "synthetic_coupling", &R::synthetic_coupling),
      make_field("objective", "synthetic_scale", &R::synthetic_scale),
      make_field("objective", "quadratic_center", &R::quadratic_center),
      make_field("plantsim", "dt", &R::dt),
      make_field("plantsim", "control_rate", &R::control_rate),
      make_field("plantsim", "wind", &R::wind),
      make_field("plantsim", "damping", &R::damping),
      make_field("plantsim", "random_wind_phase", &R::random_wind_phase),
      make_field("plantsim", "v_base", &R::v_base),
      make_field("plantsim", "v_x0", &R::v_x0),
      make_field("plantsim", "v_y0", &R::v_y0),
      make_field("plantsim", "v_z0", &R::v_z0),
      make_field("plantsim", "omega", &R::omega),
      make_field("plantsim", "cm_offset", &R::cm_offset),
      make_field("plantsim", "stab_area", &R::stab_area),
      make_field("plantsim", "pitch_setpoint", &R::pitch_setpoint),
      make_field("plantsim", "duration", &R::duration),
      make_field("plantsim", "cost_begin", &R::cost_begin),
      econ_field("c_eng", &econ::EconParams::c_eng),
      econ_field("c_recharge", &econ::EconParams::c_recharge),
      econ_field("c_wrecharge", &econ::EconParams::c_wrecharge),
      econ_field("c_lost_time", &econ::EconParams::c_lost_time),
      econ_field("t_print", &econ::EconParams::t_print),
      econ_field("t_3d_fins", &econ::EconParams::t_3d_fins),
      econ_field("t_lead", &econ::EconParams::t_lead),
      econ_field("t_setup", &econ::EconParams::t_setup),
      econ_field("t_reconfig", &econ::EconParams::t_reconfig),
      econ_field("t_exp", &econ::EconParams::t_exp),
      econ_field("m", &econ::EconParams::m),
      econ_field("m_prime", &econ::EconParams::m_prime),
      make_field("econ", "scenarios", &R::scenarios),
  };
  return fields;
}

inline const std::vector<std::string>& known_modes() {
  static const std::vector<std::string> m{"codesign", "bo", "batch-bo", "econ", "simulate"};
  return m;
}

/// Objectives accepted per mode.
inline std::vector<std::string> known_objectives(const std::string& mode) {
  if (mode == "codesign") return {"plantsim", "synthetic-quadratic"};
  if (mode == "bo" || mode == "batch-bo") return {"quadratic", "branin", "plantsim"};
  return {"plantsim"};
}

namespace detail {

inline void check_box(const std::vector<double>& lo, const std::vector<double>& hi, const std::string& key) {
  if (lo.size() != hi.size())
    throw ConfigError(kExitValidation, "config: " + key + ": lower and upper have different lengths");
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (!(lo[i] < hi[i]))
      throw ConfigError(kExitValidation, "config: " + key + ": lower >= upper in dimension " + std::to_string(i));
}

inline void check(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError(kExitValidation, "config: key '" + key + "': " + what);
}

}  // namespace detail

/// Throws ConfigError(kExitValidation) naming the first offending key.
inline void validate(const RunConfig& c) {
  using detail::check;
  const auto& modes = known_modes();
  check(std::find(modes.begin(), modes.end(), c.mode) != modes.end(), "run.mode",
        "unknown mode '" + c.mode + "'");
  const auto objs = known_objectives(c.mode);
  if (c.mode != "econ")
    check(std::find(objs.begin(), objs.end(), c.objective) != objs.end(), "run.objective",
          "objective '" + c.objective + "' is not available in mode '" + c.mode + "'");
  check(!c.out.empty(), "run.out", "must not be empty");
  detail::check_box(c.lower, c.upper, "domain");
  check(c.lower.size() <= 16, "domain.lower", "at most 16 dimensions");
  check(c.batch_size >= 1, "bo.batch_size", "must be >= 1");
  check(c.initial_points >= 2, "bo.initial_points", "must be >= 2");
  check(c.budget >= 0, "bo.budget", "must be >= 0");
  check(c.epsilon > 0.0, "bo.epsilon", "must be > 0");
  check(c.window >= 1, "bo.window", "must be >= 1");
  check(c.convergence_on == "incumbent" || c.convergence_on == "iteration-best", "bo.convergence_on",
        "must be incumbent or iteration-best");
  check(c.restarts >= 1, "gp.restarts", "must be >= 1");
  check(c.lengthscale_min > 0.0 && c.lengthscale_min < c.lengthscale_max, "gp.lengthscale_min",
        "must satisfy 0 < lengthscale_min < lengthscale_max");
  check(c.noise_floor > 0.0, "gp.noise_floor", "must be > 0");
  check(c.screening_per_dim >= 1, "search.screening_per_dim", "must be >= 1");
  check(c.top_k >= 1, "search.top_k", "must be >= 1");
  check(c.refine_iterations >= 0, "search.refine_iterations", "must be >= 0");
  check(c.initial_step > 0.0 && c.initial_step <= 1.0, "search.initial_step", "must be in (0, 1]");
  check(c.lipschitz_samples_per_dim >= 1, "search.lipschitz_samples_per_dim", "must be >= 1");
  check(c.plant_lower.size() == 2, "codesign.plant_lower", "needs 2 entries (cm_offset, stab_area)");
  detail::check_box(c.plant_lower, c.plant_upper, "codesign.plant");
  check(c.plant_lower[1] > 0.0, "codesign.plant_lower", "stabilizer area bound must be > 0");
  check(c.control_lower < c.control_upper, "codesign.control_lower", "lower >= upper in dimension 0");
  check(c.inner_initial_points >= 2, "codesign.inner_initial_points", "must be >= 2");
  check(c.inner_max_windows >= c.inner_initial_points, "codesign.inner_max_windows",
        "must be >= inner_initial_points");
  check(c.inner_epsilon > 0.0, "codesign.inner_epsilon", "must be > 0");
  check(c.inner_window >= 1, "codesign.inner_window", "must be >= 1");
  check(c.settle >= 0.0, "window.settle", "must be >= 0");
  check(c.performance > 0.0, "window.performance", "must be > 0");
  check(c.update >= 0.0, "window.update", "must be >= 0");
  check(c.k1 >= 0.0 && c.k2 >= 0.0 && c.k3 >= 0.0, "objective.k1", "weights must be >= 0");
  check(c.synthetic_plant_target.size() == 2, "objective.synthetic_plant_target", "needs 2 entries");
  check(c.synthetic_coupling.size() == 2, "objective.synthetic_coupling", "needs 2 entries");
  check(c.synthetic_scale > 0.0, "objective.synthetic_scale", "must be > 0");
  check(c.quadratic_center.size() == c.lower.size(), "objective.quadratic_center",
        "must have one entry per domain dimension");
  check(c.dt > 0.0 && c.dt <= 0.05, "plantsim.dt", "must be in (0, 0.05]");
  check(c.control_rate > 0.0, "plantsim.control_rate", "must be > 0");
  const double steps = 1.0 / (c.control_rate * c.dt);
  check(std::abs(steps - std::round(steps)) < 1e-9 && std::round(steps) >= 1.0, "plantsim.control_rate",
        "control period must be a whole number of dt steps");
  check(c.v_base > 0.0, "plantsim.v_base", "must be > 0");
  check(c.omega >= 0.0, "plantsim.omega", "must be >= 0");
  check(c.stab_area > 0.0, "plantsim.stab_area", "must be > 0");
  check(c.duration > 0.0, "plantsim.duration", "must be > 0");
  check(c.cost_begin >= 0.0 && c.cost_begin <= c.duration, "plantsim.cost_begin", "must lie in [0, duration]");
  try {
    c.econ.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(kExitValidation, std::string("config: section [econ]: ") + e.what());
  }
  check(!c.scenarios.empty(), "econ.scenarios", "must not be empty");
  for (const auto& s : c.scenarios)
    check(s.n_per_batch >= 1 && s.n_convergence >= 1, "econ.scenarios", "N and n_convergence must be >= 1");
}

/// Parses INI text. Unknown sections or keys, duplicates and malformed lines
/// are errors. Missing keys keep their defaults. Does not validate.
inline RunConfig parse_config_text(const std::string& text) {
  RunConfig c;
  const auto& schema = config_schema();
  std::set<std::string> sections;
  for (const auto& f : schema) sections.insert(f.section);
  std::set<std::string> seen;
  std::string section;
  std::istringstream is(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    const std::string line = detail::trim(raw);
    const std::string where = "config line " + std::to_string(line_no) + ": ";
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(kExitParse, where + "unterminated section header");
      section = detail::trim(std::string_view(line).substr(1, line.size() - 2));
      if (!sections.count(section)) throw ConfigError(kExitParse, where + "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(kExitParse, where + "expected key = value");
    const std::string key = detail::trim(std::string_view(line).substr(0, eq));
    const std::string value = detail::trim(std::string_view(line).substr(eq + 1));
    if (section.empty()) throw ConfigError(kExitParse, where + "key '" + key + "' outside any section");
    const std::string full = section + "." + key;
    const auto it = std::find_if(schema.begin(), schema.end(),
                                 [&](const detail::Field& f) { return f.section == section && f.key == key; });
    if (it == schema.end()) throw ConfigError(kExitParse, where + "unknown key '" + full + "'");
    if (!seen.insert(full).second) throw ConfigError(kExitParse, where + "duplicate key '" + full + "'");
    it->set(c, value, full);
  }
  return c;
}

/// Reads a config file. Validation can be deferred so command-line overrides
/// are applied before the bounds are checked.
inline RunConfig parse_config(const std::string& path, bool validate_now = true) {
  std::ifstream in(path);
  if (!in) throw ConfigError(kExitMissingFile, "config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  RunConfig c = parse_config_text(ss.str());
  if (validate_now) validate(c);
  return c;
}

/// Every key, grouped by section; parse_config_text inverts it exactly.
inline std::string serialize_config(const RunConfig& c) {
  std::string out;
  std::string section;
  for (const auto& f : config_schema()) {
    if (f.section != section) {
      out += (section.empty() ? "[" : "\n[") + f.section + "]\n";
      section = f.section;
    }
    out += f.key + " = " + f.get(c) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Derived library configurations

inline ConvergenceCriterion to_criterion(const RunConfig& c) {
  ConvergenceCriterion k;
  k.epsilon = c.epsilon;
  k.window = c.window;
  k.standardized = c.standardized;
  k.quantity = c.convergence_on == "incumbent" ? ConvergenceCriterion::Quantity::kIncumbent
                                               : ConvergenceCriterion::Quantity::kIterationBest;
  return k;
}

inline FitConfig to_fit_config(const RunConfig& c) {
  FitConfig f;
  f.restarts = c.restarts;
  f.lengthscale_min = c.lengthscale_min;
  f.lengthscale_max = c.lengthscale_max;
  f.fit_noise = c.fit_noise;
  f.noise_floor = c.noise_floor;
  return f;
}

inline SearchConfig to_search_config(const RunConfig& c) {
  SearchConfig s;
  s.screening_per_dim = c.screening_per_dim;
  s.top_k = c.top_k;
  s.refine_iterations = c.refine_iterations;
  s.initial_step = c.initial_step;
  return s;
}

inline BoConfig to_bo_config(const RunConfig& c) {
  BoConfig b;
  b.criterion = to_criterion(c);
  b.budget = c.budget;
  b.fit = to_fit_config(c);
  b.search = to_search_config(c);
  b.lipschitz.samples_per_dim = c.lipschitz_samples_per_dim;
  b.seed = c.seed;
  b.parallel_evaluations = c.parallel;
  return b;
}

inline plantsim::SimConfig to_sim_config(const RunConfig& c) {
  plantsim::SimConfig s;
  s.dt = c.dt;
  s.control_rate = c.control_rate;
  s.wind_enabled = c.wind;
  s.random_wind_phase = c.random_wind_phase;
  s.coeffs.damping = c.damping;
  s.wind.v_base = c.v_base;
  s.wind.v_x0 = c.v_x0;
  s.wind.v_y0 = c.v_y0;
  s.wind.v_z0 = c.v_z0;
  s.wind.omega = c.omega;
  return s;
}

inline Vector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline CoDesignConfig to_codesign_config(const RunConfig& c) {
  CoDesignConfig d;
  d.plant_domain = BoxDomain(to_vector(c.plant_lower), to_vector(c.plant_upper));
  d.batch_size = c.batch_size;
  d.initial_points = c.initial_points;
  d.budget = c.budget;
  d.criterion = to_criterion(c);
  d.fit = to_fit_config(c);
  d.search = to_search_config(c);
  d.lipschitz.samples_per_dim = c.lipschitz_samples_per_dim;
  d.inner.control_domain = BoxDomain(Vector::Constant(1, c.control_lower), Vector::Constant(1, c.control_upper));
  d.inner.window = {c.settle, c.performance, c.update};
  d.inner.initial_points = c.inner_initial_points;
  d.inner.max_windows = c.inner_max_windows;
  d.inner.criterion = to_criterion(c);
  d.inner.criterion.epsilon = c.inner_epsilon;
  d.inner.criterion.window = c.inner_window;
  d.inner.fit = to_fit_config(c);
  d.inner.search = to_search_config(c);
  d.inner.weights = {c.k1, c.k2, c.k3};
  d.model = c.objective == "synthetic-quadratic" ? PlantModel::kSyntheticQuadratic : PlantModel::kSimulator;
  d.sim = to_sim_config(c);
  d.synthetic = {to_vector(c.synthetic_plant_target), c.synthetic_control_offset, to_vector(c.synthetic_coupling),
                 c.synthetic_scale};
  d.seed = c.seed;
  d.parallel_evaluations = c.parallel;
  return d;
}

}  // namespace cobo

#endif  // COBO_CONFIG_HPP
