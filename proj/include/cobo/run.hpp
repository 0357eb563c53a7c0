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

#ifndef COBO_RUN_HPP
#define COBO_RUN_HPP

#include <filesystem>
#include <fstream>
#include <iostream>

#include "cobo/config.hpp"

namespace cobo {

// ---------------------------------------------------------------------------
// Benchmark objectives

/// Negated Branin function; three global maxima of -0.397887.
inline double branin_reward(const InputPoint& x) {
  require(x.size() == 2, "branin: needs 2 dimensions");
  constexpr double pi = std::numbers::pi;
  const double b = 5.1 / (4.0 * pi * pi), c = 5.0 / pi, t = 1.0 / (8.0 * pi);
  const double a = x[1] - b * x[0] * x[0] + c * x[0] - 6.0;
  return -(a * a + 10.0 * (1.0 - t) * std::cos(x[0]) + 10.0);
}

/// Builds the standalone-BO objective named in the config.
inline Objective make_bo_objective(const RunConfig& c) {
  Objective o;
  o.name = c.objective;
  if (c.objective == "quadratic") {
    o.domain = BoxDomain(to_vector(c.lower), to_vector(c.upper));
    const Vector center = to_vector(c.quadratic_center);
    o.evaluator = [center](const InputPoint& x) { return -(x - center).squaredNorm(); };
  } else if (c.objective == "branin") {
    if (c.lower.size() != 2) throw ConfigError(kExitValidation, "config: key 'domain.lower': branin needs 2 dimensions");
    o.domain = BoxDomain(to_vector(c.lower), to_vector(c.upper));
    o.evaluator = branin_reward;
  } else if (c.objective == "plantsim") {
    // pitch set-point of one fixed plant, each evaluation a fresh episode
    o.domain = BoxDomain(Vector::Constant(1, c.control_lower), Vector::Constant(1, c.control_upper));
    const PlantParams plant{c.cm_offset, c.stab_area};
    const plantsim::SimConfig sim = to_sim_config(c);
    const plantsim::PerformanceWeights w{c.k1, c.k2, c.k3};
    const double duration = c.duration, begin = c.cost_begin;
    const std::uint64_t seed = c.seed;
    o.evaluator = [=](const InputPoint& x) {
      const auto h = plantsim::run_episode(plant, {x[0]}, duration, seed, sim);
      if (h.empty() || h.back().diverged) return std::numeric_limits<double>::quiet_NaN();
      return -plantsim::evaluate_performance_index(h, w, begin, duration);
    };
  } else {
    throw ConfigError(kExitValidation, "config: key 'run.objective': unknown objective '" + c.objective + "'");
  }
  return o;
}

// ---------------------------------------------------------------------------
// Output helpers

namespace detail {

inline std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream os(p);
  if (!os) throw std::runtime_error("cannot write '" + p.string() + "'");
  return os;
}

inline void write_convergence_csv(std::ostream& os, const OptimizationTrace& t) {
  const Eigen::Index d = t.evaluations.empty() ? 0 : t.evaluations.front().point.size();
  os << "iteration,evaluations,incumbent,iteration_best,reward_std,converged,degenerate,signal_variance";
  for (Eigen::Index i = 0; i < d; ++i) os << ",lengthscale" << i;
  os << ",noise_variance\n";
  std::size_t evals = t.evaluations.size() - [&] {
    std::size_t n = 0;
    for (const auto& it : t.iterations) n += it.points.size();
    return n;
  }();
  for (const auto& it : t.iterations) {
    evals += it.points.size();
    const double ib = *std::max_element(it.rewards.begin(), it.rewards.end());
    os << it.iteration << ',' << evals << ',' << num(it.incumbent) << ',' << num(ib) << ',' << num(it.reward_std) << ','
       << (it.converged ? 1 : 0) << ',' << (it.degenerate ? 1 : 0) << ',' << num(it.hyper.signal_variance);
    for (Eigen::Index i = 0; i < d; ++i)
      os << ',' << (i < it.hyper.lengthscales.size() ? num(it.hyper.lengthscales[i]) : "");
    os << ',' << num(it.hyper.noise_variance) << '\n';
  }
}

inline std::string point_string(const InputPoint& p) {
  std::string s;
  for (Eigen::Index i = 0; i < p.size(); ++i) s += (i ? " " : "") + num(p[i]);
  return s;
}

inline void write_summary_header(std::ostream& os, const RunConfig& c) {
  os << "mode = " << c.mode << "\nobjective = " << c.objective << "\nseed = " << c.seed << '\n';
}

inline void write_trace_summary(std::ostream& os, const OptimizationTrace& t) {
  os << "stop_reason = " << to_string(t.stop_reason) << '\n';
  os << "iterations = " << t.iterations.size() << '\n';
  os << "converged_at = " << t.converged_at() << '\n';
  os << "evaluations = " << t.evaluations.size() << '\n';
  if (!t.message.empty()) os << "message = " << t.message << '\n';
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Modes

inline int run_bo_mode(const RunConfig& c, const std::filesystem::path& out, std::ostream& log) {
  const Objective obj = make_bo_objective(c);
  const BoConfig bo = to_bo_config(c);
  const Dataset init = initial_dataset(obj, c.initial_points, c.seed);
  const OptimizationTrace t = c.batch_size == 1 && c.mode == "bo" ? run_sequential_bo(obj, init, bo)
                                                                   : run_batch_bo(obj, init, c.batch_size, bo);
  {
    auto os = detail::open_out(out / "trace.csv");
    write_trace_csv(os, t);
  }
  {
    auto os = detail::open_out(out / "convergence.csv");
    detail::write_convergence_csv(os, t);
  }
  auto os = detail::open_out(out / "summary.txt");
  detail::write_summary_header(os, c);
  os << "batch_size = " << c.batch_size << '\n';
  detail::write_trace_summary(os, t);
  os << "best_point = " << detail::point_string(t.best_point()) << '\n';
  os << "best_reward = " << detail::num(t.best_reward()) << '\n';
  log << "bo: " << to_string(t.stop_reason) << " after " << t.iterations.size() << " iterations, best reward "
      << detail::num(t.best_reward()) << " at [" << detail::point_string(t.best_point()) << "]\n";
  return t.stop_reason == StopReason::kObjectiveFailure || t.stop_reason == StopReason::kFitFailure ? kExitRuntime
                                                                                                    : kExitOk;
}

inline int run_codesign_mode(const RunConfig& c, const std::filesystem::path& out, std::ostream& log) {
  const CoDesignConfig cfg = to_codesign_config(c);
  const CoDesignResult r = run_codesign(cfg);
  {
    auto os = detail::open_out(out / "outer_trace.csv");
    write_trace_csv(os, r.outer_trace);
  }
  {
    // Per-iteration convergence of plant, control and cost.
    auto os = detail::open_out(out / "convergence.csv");
    os << "iteration,evaluations,incumbent_reward,best_cm_offset,best_stab_area,best_pitch_setpoint,best_cost\n";
    double best = -std::numeric_limits<double>::infinity();
    const InnerResult* best_run = nullptr;
    std::size_t k = 0;
    const auto& evals = r.outer_trace.evaluations;
    auto advance_to = [&](int iteration) {
      for (; k < evals.size() && evals[k].iteration <= iteration; ++k) {
        const InnerResult& ir = r.inner_runs[k];
        if (std::isfinite(ir.reward) && ir.reward > best) {
          best = ir.reward;
          best_run = &ir;
        }
      }
    };
    for (int it = 0; it <= static_cast<int>(r.outer_trace.iterations.size()); ++it) {
      advance_to(it);
      os << it << ',' << k << ',';
      if (best_run) {
        os << detail::num(best) << ',' << detail::num(best_run->plant.cm_offset) << ','
           << detail::num(best_run->plant.stab_area) << ',' << detail::num(best_run->best_control.pitch_setpoint)
           << ',' << detail::num(-best) << '\n';
      } else {
        os << ",,,,\n";
      }
    }
  }
  {
    auto os = detail::open_out(out / "inner_traces.csv");
    os << "candidate,outer_iteration,outer_batch_index,cm_offset,stab_area,window,pitch_setpoint,reward,incumbent,"
          "penalized\n";
    for (std::size_t i = 0; i < r.inner_runs.size(); ++i) {
      const auto& ir = r.inner_runs[i];
      const auto& oe = r.outer_trace.evaluations[i];
      int w = 0;
      for (const auto& e : ir.trace.evaluations) {
        os << i << ',' << oe.iteration << ',' << oe.batch_index << ',' << detail::num(ir.plant.cm_offset) << ','
           << detail::num(ir.plant.stab_area) << ',' << w++ << ',' << detail::num(e.point[0]) << ','
           << detail::num(e.reward) << ',' << detail::num(e.incumbent) << ',' << (e.penalized ? 1 : 0) << '\n';
      }
    }
  }
  if (std::isfinite(r.best_cost)) {
    // Replay the winning plant's inner loop with recording on.
    InnerRecording rec;
    inner_loop_optimize(r.best_plant, cfg, &rec);
    auto ws = detail::open_out(out / "best_inner_windows.csv");
    ws << "window,pitch_setpoint,performance_begin,performance_end,cost,diverged\n";
    for (std::size_t i = 0; i < rec.windows.size(); ++i) {
      const auto& w = rec.windows[i];
      ws << i << ',' << detail::num(w.pitch_setpoint) << ',' << detail::num(w.performance_begin) << ','
         << detail::num(w.performance_end) << ',' << detail::num(w.cost) << ',' << (w.diverged ? 1 : 0) << '\n';
    }
    if (!rec.samples.empty()) {
      auto ts = detail::open_out(out / "best_inner_timeseries.csv");
      plantsim::write_timeseries_csv(ts, rec.samples);
    }
  }
  auto os = detail::open_out(out / "summary.txt");
  detail::write_summary_header(os, c);
  os << "batch_size = " << c.batch_size << '\n';
  detail::write_trace_summary(os, r.outer_trace);
  os << "diverged_candidates = " << r.diverged_candidates << '\n';
  os << "best_cm_offset = " << detail::num(r.best_plant.cm_offset) << '\n';
  os << "best_stab_area = " << detail::num(r.best_plant.stab_area) << '\n';
  os << "best_pitch_setpoint = " << detail::num(r.best_control.pitch_setpoint) << '\n';
  os << "best_cost = " << detail::num(r.best_cost) << '\n';
  log << "codesign: " << to_string(r.outer_trace.stop_reason) << " after " << r.outer_trace.iterations.size()
      << " outer iterations; best plant (cm_offset " << detail::num(r.best_plant.cm_offset) << ", stab_area "
      << detail::num(r.best_plant.stab_area) << "), pitch set-point " << detail::num(r.best_control.pitch_setpoint)
      << ", J " << detail::num(r.best_cost) << '\n';
  return std::isfinite(r.best_cost) ? kExitOk : kExitRuntime;
}

inline int run_simulate_mode(const RunConfig& c, const std::filesystem::path& out, std::ostream& log) {
  const plantsim::SimConfig sim = to_sim_config(c);
  const auto h = plantsim::run_episode({c.cm_offset, c.stab_area}, {c.pitch_setpoint}, c.duration, c.seed, sim);
  const bool diverged = !h.empty() && h.back().diverged;
  const double j = plantsim::evaluate_performance_index(h, {c.k1, c.k2, c.k3}, c.cost_begin, c.duration);
  {
    auto os = detail::open_out(out / "timeseries.csv");
    plantsim::write_timeseries_csv(os, h);
  }
  auto os = detail::open_out(out / "summary.txt");
  detail::write_summary_header(os, c);
  os << "samples = " << h.size() << '\n';
  os << "diverged = " << (diverged ? "true" : "false") << '\n';
  os << "cost_window = " << detail::num(c.cost_begin) << " " << detail::num(c.duration) << '\n';
  os << "cost = " << detail::num(j) << '\n';
  log << "simulate: " << h.size() << " samples, J = " << detail::num(j) << (diverged ? " (diverged)" : "") << '\n';
  return diverged ? kExitRuntime : kExitOk;
}

inline int run_econ_mode(const RunConfig& c, const std::filesystem::path& out, std::ostream& log) {
  const econ::EconReport rep = econ::economies_report(c.econ, c.scenarios);
  {
    auto os = detail::open_out(out / "cost_table.csv");
    os << rep.csv();
  }
  auto os = detail::open_out(out / "summary.txt");
  detail::write_summary_header(os, c);
  os << rep.format();
  log << rep.format();
  return kExitOk;
}

/// Executes the configured mode, writing every output under `c.out`. The
/// resolved config is written first so even failed runs leave an audit trail.
inline int run(const RunConfig& c, std::ostream& log = std::cout) {
  validate(c);
  const std::filesystem::path out(c.out);
  std::filesystem::create_directories(out);
  {
    auto os = detail::open_out(out / "resolved_config.ini");
    os << serialize_config(c);
  }
  if (c.mode == "codesign") return run_codesign_mode(c, out, log);
  if (c.mode == "bo" || c.mode == "batch-bo") return run_bo_mode(c, out, log);
  if (c.mode == "simulate") return run_simulate_mode(c, out, log);
  return run_econ_mode(c, out, log);
}

/// Prints the summary of a finished run directory.
inline int report(const std::filesystem::path& dir, std::ostream& os) {
  const auto summary = dir / "summary.txt";
  std::ifstream in(summary);
  if (!in) {
    os << "report: no summary in '" << dir.string() << "'\n";
    return kExitMissingFile;
  }
  os << in.rdbuf();
  for (const char* name : {"convergence.csv", "trace.csv", "outer_trace.csv", "timeseries.csv", "cost_table.csv"}) {
    std::ifstream f(dir / name);
    if (!f) continue;
    std::size_t rows = 0;
    std::string line;
    while (std::getline(f, line)) ++rows;
    os << name << ": " << (rows ? rows - 1 : 0) << " rows\n";
  }
  return kExitOk;
}

}  // namespace cobo

#endif  // COBO_RUN_HPP
