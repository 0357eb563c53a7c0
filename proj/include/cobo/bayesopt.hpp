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

#ifndef COBO_BAYESOPT_HPP
#define COBO_BAYESOPT_HPP

#include <chrono>
#include <functional>
#include <future>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "cobo/acquisition.hpp"
#include "cobo/batch.hpp"
#include "cobo/gp.hpp"
#include "cobo/lowdiscrepancy.hpp"

namespace cobo {

/// Black-box reward to maximize. The evaluator must be deterministic and
/// safe to call concurrently on distinct points.
struct Objective {
  std::function<double(const InputPoint&)> evaluator;
  BoxDomain domain;
  std::string name;
};

/// Stop when the last `window` increments of the incumbent are all below
/// `epsilon`. With `standardized`, the loops divide incumbents by the current
/// reward standard deviation before testing.
struct ConvergenceCriterion {
  /// Which per-iteration reward the test is applied to.
  enum class Quantity {
    kIncumbent,      ///< best reward seen so far
    kIterationBest,  ///< best reward evaluated in that iteration
  };

  double epsilon = 1e-3;
  int window = 2;
  bool standardized = true;
  Quantity quantity = Quantity::kIncumbent;

  void validate() const {
    require(epsilon > 0.0 && std::isfinite(epsilon), "ConvergenceCriterion: epsilon must be positive");
    require(window >= 1, "ConvergenceCriterion: window must be >= 1");
  }
};

/// |R_i - R_{i-j}| < epsilon for j = 1..window at the last index i.
inline bool check_convergence(const std::vector<double>& incumbents, const ConvergenceCriterion& c) {
  c.validate();
  const std::size_t w = static_cast<std::size_t>(c.window);
  if (incumbents.size() <= w) return false;
  const std::size_t i = incumbents.size() - 1;
  for (std::size_t j = 1; j <= w; ++j) {
    if (!(std::abs(incumbents[i] - incumbents[i - j]) < c.epsilon)) return false;
  }
  return true;
}

enum class StopReason { kConverged, kBudgetExhausted, kObjectiveFailure, kFitFailure };

inline std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::kConverged: return "converged";
    case StopReason::kBudgetExhausted: return "budget-exhausted";
    case StopReason::kObjectiveFailure: return "objective-failure";
    case StopReason::kFitFailure: return "fit-failure";
  }
  return "unknown";
}

struct EvaluationRecord {
  int iteration = 0;  ///< 0 for the initial design
  int batch_index = 0;
  InputPoint point;
  double reward = 0.0;
  double incumbent = 0.0;
  bool penalized = false;  ///< reward replaced by the failure penalty
  double timestamp = 0.0;  ///< seconds since the run started
};

struct PhaseTimes {
  double fit = 0.0;
  double select = 0.0;
  double evaluate = 0.0;
};

struct IterationRecord {
  int iteration = 0;
  std::vector<InputPoint> points;
  std::vector<double> rewards;
  double incumbent = 0.0;
  Hyperparameters hyper;
  double reward_std = 1.0;
  bool converged = false;
  bool degenerate = false;
  PhaseTimes wall;
};

struct OptimizationTrace {
  std::string objective_name;
  std::vector<EvaluationRecord> evaluations;
  std::vector<IterationRecord> iterations;
  StopReason stop_reason = StopReason::kBudgetExhausted;
  std::string message;

  std::size_t best_index() const {
    require(!evaluations.empty(), "OptimizationTrace: no evaluations");
    std::size_t best = 0;
    for (std::size_t i = 1; i < evaluations.size(); ++i)
      if (evaluations[i].reward > evaluations[best].reward) best = i;
    return best;
  }
  const InputPoint& best_point() const { return evaluations[best_index()].point; }
  double best_reward() const { return evaluations[best_index()].reward; }

  /// Incumbent after each BO iteration (initial design excluded).
  std::vector<double> incumbents() const {
    std::vector<double> out;
    for (const auto& it : iterations) out.push_back(it.incumbent);
    return out;
  }

  /// Index of the first iteration flagged converged, or -1.
  int converged_at() const {
    for (const auto& it : iterations)
      if (it.converged) return it.iteration;
    return -1;
  }
};

/// Equality over everything except wall-clock fields.
inline bool same_outcome(const OptimizationTrace& a, const OptimizationTrace& b) {
  if (a.stop_reason != b.stop_reason || a.evaluations.size() != b.evaluations.size() ||
      a.iterations.size() != b.iterations.size())
    return false;
  for (std::size_t i = 0; i < a.evaluations.size(); ++i) {
    const auto& x = a.evaluations[i];
    const auto& y = b.evaluations[i];
    if (x.iteration != y.iteration || x.batch_index != y.batch_index || x.point != y.point ||
        x.reward != y.reward || x.incumbent != y.incumbent || x.penalized != y.penalized)
      return false;
  }
  for (std::size_t i = 0; i < a.iterations.size(); ++i) {
    const auto& x = a.iterations[i];
    const auto& y = b.iterations[i];
    if (x.iteration != y.iteration || x.points != y.points || x.rewards != y.rewards ||
        x.incumbent != y.incumbent || !(x.hyper == y.hyper) || x.converged != y.converged ||
        x.degenerate != y.degenerate)
      return false;
  }
  return true;
}

/// One record per evaluation, comma separated, with a header line:
/// iteration,batch_index,x0..x{d-1},reward,incumbent,penalized,timestamp
inline void write_trace_csv(std::ostream& os, const OptimizationTrace& trace) {
  const Eigen::Index d = trace.evaluations.empty() ? 0 : trace.evaluations.front().point.size();
  os << "iteration,batch_index";
  for (Eigen::Index k = 0; k < d; ++k) os << ",x" << k;
  os << ",reward,incumbent,penalized,timestamp\n";
  os << std::setprecision(17);
  for (const auto& e : trace.evaluations) {
    os << e.iteration << ',' << e.batch_index;
    for (Eigen::Index k = 0; k < d; ++k) os << ',' << e.point[k];
    os << ',' << e.reward << ',' << e.incumbent << ',' << (e.penalized ? 1 : 0) << ','
       << std::setprecision(6) << e.timestamp << std::setprecision(17) << '\n';
  }
}

/// Inverse of write_trace_csv (evaluation records only).
inline std::vector<EvaluationRecord> read_trace_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw InvalidArgument("read_trace_csv: missing header");
  std::size_t columns = 1;
  for (char ch : line) columns += ch == ',' ? 1 : 0;
  require(columns >= 6, "read_trace_csv: malformed header");
  const std::size_t d = columns - 6;
  std::vector<EvaluationRecord> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    require(cells.size() == columns, "read_trace_csv: wrong column count");
    EvaluationRecord r;
    r.iteration = std::stoi(cells[0]);
    r.batch_index = std::stoi(cells[1]);
    r.point.resize(static_cast<Eigen::Index>(d));
    for (std::size_t k = 0; k < d; ++k) r.point[static_cast<Eigen::Index>(k)] = std::stod(cells[2 + k]);
    r.reward = std::stod(cells[2 + d]);
    r.incumbent = std::stod(cells[3 + d]);
    r.penalized = cells[4 + d] == "1";
    r.timestamp = std::stod(cells[5 + d]);
    out.push_back(std::move(r));
  }
  return out;
}

struct BoConfig {
  ConvergenceCriterion criterion;
  int budget = 100;  ///< evaluations allowed after the initial design
  FitConfig fit;
  SearchConfig search;
  LipschitzConfig lipschitz;
  std::uint64_t seed = 0;
  bool parallel_evaluations = true;
};

/// Reward substituted for a non-finite evaluation: ten times the worst finite
/// reward seen so far when that is negative (i.e. -10x the worst cost), and
/// -1e6 before any finite reward exists.
inline double failure_penalty(const std::vector<double>& rewards) {
  double worst = std::numeric_limits<double>::infinity();
  for (double r : rewards)
    if (std::isfinite(r)) worst = std::min(worst, r);
  if (!std::isfinite(worst)) return -1e6;
  return worst - 9.0 * std::abs(worst);
}

/// `n` seeded low-discrepancy points over the domain.
inline std::vector<InputPoint> initial_design(const BoxDomain& domain, int n, std::uint64_t seed) {
  require(n >= 1, "initial_design: need at least one point");
  const HaltonSequence seq(domain.dim(), mix_seed(seed, 0x1417u) | 1u);
  std::vector<InputPoint> pts;
  for (int i = 0; i < n; ++i) pts.push_back(domain.from_unit(seq(static_cast<std::uint64_t>(i))));
  return pts;
}

/// Evaluates the initial design. Non-finite rewards get the failure penalty.
inline Dataset initial_dataset(const Objective& objective, int n, std::uint64_t seed) {
  Dataset data;
  for (const auto& p : initial_design(objective.domain, n, seed)) {
    double r = objective.evaluator(p);
    if (!std::isfinite(r)) r = failure_penalty(data.rewards);
    data.append(p, r);
  }
  return data;
}

namespace detail {

enum class Selection { kSequential, kBatch };

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Next point for plain BO: EI argmax, falling back to the max-variance point
/// when EI vanishes everywhere.
inline SearchResult next_sequential_point(const GpModel& model, const BoxDomain& domain, const SearchConfig& cfg,
                                          bool& degenerate) {
  AcquisitionSurface surface(model, domain);
  SearchResult r = maximize_acquisition_detailed(surface, domain, cfg);
  degenerate = !(r.ei > 0.0);
  if (degenerate) {
    surface.set_mode(SurfaceMode::kVariance);
    r = maximize_acquisition_detailed(surface, domain, cfg);
  }
  return r;
}

inline std::vector<double> evaluate_all(const Objective& objective, const std::vector<InputPoint>& pts,
                                        bool parallel) {
  std::vector<double> out(pts.size());
  if (parallel && pts.size() > 1) {
    std::vector<std::future<double>> futures;
    futures.reserve(pts.size());
    for (const auto& p : pts)
      futures.push_back(std::async(std::launch::async, [&objective, p] { return objective.evaluator(p); }));
    std::exception_ptr first_error;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      try {
        out[i] = futures[i].get();
      } catch (...) {
        if (!first_error) first_error = std::current_exception();
      }
    }
    if (first_error) std::rethrow_exception(first_error);
  } else {
    for (std::size_t i = 0; i < pts.size(); ++i) out[i] = objective.evaluator(pts[i]);
  }
  return out;
}

inline OptimizationTrace run_loop(const Objective& objective, const Dataset& init, int n_b, const BoConfig& cfg,
                                  Selection selection) {
  objective.domain.validate();
  cfg.criterion.validate();
  require(static_cast<bool>(objective.evaluator), "run_bo: objective has no evaluator");
  require(n_b >= 1, "run_bo: batch size must be >= 1");
  require(cfg.budget >= 0, "run_bo: budget must be >= 0");
  init.validate();
  require(init.size() >= 2, "run_bo: initial dataset needs >= 2 evaluated points");
  require(init.dim() == objective.domain.dim(), "run_bo: initial dataset dimension mismatch");

  const auto t0 = std::chrono::steady_clock::now();
  OptimizationTrace trace;
  trace.objective_name = objective.name;
  Dataset data = init;

  double incumbent = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < data.size(); ++i) {
    incumbent = std::max(incumbent, data.rewards[i]);
    trace.evaluations.push_back({0, static_cast<int>(i), data.inputs[i], data.rewards[i], incumbent, false,
                                 seconds_since(t0)});
  }

  std::vector<double> incumbents;
  int used = 0;
  for (int t = 1;; ++t) {
    if (cfg.budget - used < n_b) {
      trace.stop_reason = StopReason::kBudgetExhausted;
      break;
    }
    IterationRecord rec;
    rec.iteration = t;

    auto phase = std::chrono::steady_clock::now();
    FitConfig fit_cfg = cfg.fit;
    fit_cfg.seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(t), 1);
    std::optional<GpModel> model;
    try {
      model.emplace(fit(data, objective.domain, fit_cfg));
    } catch (const FitFailure& e) {
      if (e.best_partial()) {
        model.emplace(*e.best_partial());
      } else {
        trace.stop_reason = StopReason::kFitFailure;
        trace.message = e.what();
        break;
      }
    }
    rec.wall.fit = seconds_since(phase);
    rec.hyper = model->hyper();
    rec.reward_std = model->scaling().reward_std;

    phase = std::chrono::steady_clock::now();
    SearchConfig search_cfg = cfg.search;
    search_cfg.seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(t), 2);
    if (selection == Selection::kSequential) {
      bool degenerate = false;
      rec.points.push_back(next_sequential_point(*model, objective.domain, search_cfg, degenerate).point);
      rec.degenerate = degenerate;
    } else {
      LipschitzConfig lip_cfg = cfg.lipschitz;
      lip_cfg.seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(t), 3);
      Batch batch = select_batch(*model, objective.domain, n_b, search_cfg, lip_cfg);
      batch.iteration_index = t;
      rec.points = std::move(batch.elements);
      rec.degenerate = batch.degenerate;
    }
    rec.wall.select = seconds_since(phase);

    phase = std::chrono::steady_clock::now();
    std::vector<double> rewards;
    try {
      rewards = evaluate_all(objective, rec.points, cfg.parallel_evaluations);
    } catch (const std::exception& e) {
      trace.stop_reason = StopReason::kObjectiveFailure;
      trace.message = e.what();
      break;
    }
    rec.wall.evaluate = seconds_since(phase);
    used += static_cast<int>(rec.points.size());

    for (std::size_t k = 0; k < rec.points.size(); ++k) {
      bool penalized = false;
      double r = rewards[k];
      if (!std::isfinite(r)) {
        r = failure_penalty(data.rewards);
        penalized = true;
      }
      data.append(rec.points[k], r);
      rec.rewards.push_back(r);
      incumbent = std::max(incumbent, r);
      trace.evaluations.push_back(
          {t, static_cast<int>(k), rec.points[k], r, incumbent, penalized, seconds_since(t0)});
    }
    rec.incumbent = incumbent;
    incumbents.push_back(cfg.criterion.quantity == ConvergenceCriterion::Quantity::kIncumbent
                             ? incumbent
                             : *std::max_element(rec.rewards.begin(), rec.rewards.end()));

    std::vector<double> scaled = incumbents;
    if (cfg.criterion.standardized)
      for (double& v : scaled) v /= rec.reward_std;
    rec.converged = check_convergence(scaled, cfg.criterion);
    const bool stop = rec.converged;
    trace.iterations.push_back(std::move(rec));
    if (stop) {
      trace.stop_reason = StopReason::kConverged;
      break;
    }
  }
  return trace;
}

}  // namespace detail

/// Generic BO: fit, maximize EI, evaluate, append; one point per iteration.
inline OptimizationTrace run_sequential_bo(const Objective& objective, const Dataset& init, const BoConfig& cfg) {
  return detail::run_loop(objective, init, 1, cfg, detail::Selection::kSequential);
}

/// Batch BO with local penalization: one GP fit per outer iteration, `n_b`
/// points per batch, all evaluated (concurrently when enabled) before refitting.
inline OptimizationTrace run_batch_bo(const Objective& objective, const Dataset& init, int n_b,
                                      const BoConfig& cfg) {
  return detail::run_loop(objective, init, n_b, cfg, detail::Selection::kBatch);
}

}  // namespace cobo

#endif  // COBO_BAYESOPT_HPP
