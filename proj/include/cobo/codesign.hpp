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

#ifndef COBO_CODESIGN_HPP
#define COBO_CODESIGN_HPP

#include <bit>
#include <map>
#include <memory>
#include <mutex>

#include "cobo/bayesopt.hpp"
#include "cobo/plantsim.hpp"

namespace cobo {

/// Phases of one inner iteration in simulation time: settle (excluded from
/// the cost), performance (integrated), update (time spent computing the next
/// set-point, with the old set-point still applied).
struct IterationWindow {
  double settle_duration = 60.0;
  double performance_duration = 120.0;
  double update_duration = 0.0;

  void validate() const {
    require(settle_duration >= 0.0 && std::isfinite(settle_duration), "IterationWindow: settle duration must be >= 0");
    require(performance_duration > 0.0 && std::isfinite(performance_duration),
            "IterationWindow: performance duration must be > 0");
    require(update_duration >= 0.0 && std::isfinite(update_duration), "IterationWindow: update duration must be >= 0");
  }

  bool operator==(const IterationWindow&) const = default;
};

/// One applied set-point and the interval over which its cost was measured.
struct WindowMark {
  double pitch_setpoint = 0.0;
  double performance_begin = 0.0;
  double performance_end = 0.0;
  double cost = 0.0;
  bool diverged = false;
};

/// Sampled history of an inner run, for plotting set-point against pitch.
struct InnerRecording {
  std::vector<plantsim::SimSample> samples;
  std::vector<WindowMark> windows;
};

/// A plant that is run window by window with a control parameter applied.
class WindowedPlant {
 public:
  virtual ~WindowedPlant() = default;
  /// Runs one iteration window at `control` (raw units) and returns the cost
  /// J over the performance phase, or NaN if the plant diverged (the plant
  /// then restarts from equilibrium).
  virtual double run_window(double control, const IterationWindow& window, InnerRecording* rec) = 0;
};

/// Continuously running simulator: state carries over between windows.
class SimulatedPlant final : public WindowedPlant {
 public:
  SimulatedPlant(const PlantParams& plant, const plantsim::SimConfig& sim, const plantsim::PerformanceWeights& w,
                 std::uint64_t seed)
      : plant_(plant), sim_cfg_(sim), weights_(w), seed_(seed) {}

  double run_window(double control, const IterationWindow& window, InnerRecording* rec) override {
    window.validate();
    if (!sim_) sim_.emplace(plant_, sim_cfg_, control, seed_);
    sim_->set_pitch_setpoint(control);
    std::vector<plantsim::SimSample>* history = rec ? &rec->samples : nullptr;
    sim_->advance(window.settle_duration, history);
    const double t_begin = sim_->time();
    std::vector<plantsim::SimSample> perf;
    sim_->advance(window.performance_duration, &perf);
    const double t_end = sim_->time();
    const bool diverged = sim_->diverged();
    const double cost = diverged ? std::numeric_limits<double>::quiet_NaN()
                                 : plantsim::evaluate_performance_index(perf, weights_, t_begin, t_end);
    if (rec) {
      // the first performance sample supersedes the closing settle sample
      if (!rec->samples.empty() && !perf.empty() && rec->samples.back().time == perf.front().time)
        rec->samples.pop_back();
      rec->samples.insert(rec->samples.end(), perf.begin(), perf.end());
      rec->windows.push_back({control, t_begin, t_end, cost, diverged});
    }
    if (diverged) {
      sim_->set_pitch_setpoint(control);
      sim_->reset();
    } else {
      sim_->advance(window.update_duration, history);
    }
    return cost;
  }

  const plantsim::Simulator* simulator() const { return sim_ ? &*sim_ : nullptr; }

 private:
  PlantParams plant_;
  plantsim::SimConfig sim_cfg_;
  plantsim::PerformanceWeights weights_;
  std::uint64_t seed_;
  std::optional<plantsim::Simulator> sim_;
};

/// Analytic plant; costs come from a SyntheticQuadratic in unit coordinates.
class SyntheticPlant final : public WindowedPlant {
 public:
  SyntheticPlant(const PlantParams& plant, const BoxDomain& plant_domain, const BoxDomain& control_domain,
                 const plantsim::SyntheticQuadratic& q)
      : unit_plant_(plant_domain.to_unit(plant.to_vector())), control_domain_(control_domain), q_(q) {}

  double run_window(double control, const IterationWindow& window, InnerRecording* rec) override {
    window.validate();
    const double uc = control_domain_.to_unit((Vector(1) << control).finished())[0];
    const double cost = q_.cost(unit_plant_, uc);
    if (rec) {
      const double t0 = clock_ + window.settle_duration;
      clock_ = t0 + window.performance_duration + window.update_duration;
      rec->windows.push_back({control, t0, t0 + window.performance_duration, cost, false});
    }
    return cost;
  }

 private:
  Vector unit_plant_;
  BoxDomain control_domain_;
  plantsim::SyntheticQuadratic q_;
  double clock_ = 0.0;
};

enum class PlantModel { kSimulator, kSyntheticQuadratic };

inline std::string to_string(PlantModel m) {
  return m == PlantModel::kSimulator ? "plantsim" : "synthetic-quadratic";
}

/// Inner loop: sequential BO over the pitch set-point.
struct InnerConfig {
  BoxDomain control_domain{Vector::Constant(1, -0.2), Vector::Constant(1, 0.35)};
  IterationWindow window;
  int initial_points = 2;
  int max_windows = 20;  ///< total windows per plant candidate, initial design included
  ConvergenceCriterion criterion;
  FitConfig fit;
  SearchConfig search;
  plantsim::PerformanceWeights weights;

  void validate() const {
    control_domain.validate();
    require(control_domain.dim() == 1, "InnerConfig: control domain must be one-dimensional");
    window.validate();
    criterion.validate();
    require(initial_points >= 2, "InnerConfig: initial_points must be >= 2");
    require(max_windows >= initial_points, "InnerConfig: max_windows must be >= initial_points");
  }
};

struct CoDesignConfig {
  BoxDomain plant_domain{(Vector(2) << -0.5, 0.5).finished(), (Vector(2) << 0.5, 2.0).finished()};
  int batch_size = 1;
  int initial_points = 2;
  int budget = 60;  ///< outer evaluations after the initial design
  ConvergenceCriterion criterion;
  FitConfig fit;
  SearchConfig search;
  LipschitzConfig lipschitz;
  InnerConfig inner;
  PlantModel model = PlantModel::kSimulator;
  plantsim::SimConfig sim;
  plantsim::SyntheticQuadratic synthetic{Vector::Constant(2, 0.5), 0.5, Vector::Zero(2), 1.0};
  std::uint64_t seed = 0;
  bool parallel_evaluations = true;

  void validate() const {
    plant_domain.validate();
    require(plant_domain.dim() == 2, "CoDesignConfig: plant domain must be two-dimensional");
    require(batch_size >= 1, "CoDesignConfig: batch_size must be >= 1");
    require(initial_points >= 2, "CoDesignConfig: initial_points must be >= 2");
    require(budget >= 0, "CoDesignConfig: budget must be >= 0");
    criterion.validate();
    inner.validate();
    if (model == PlantModel::kSimulator) {
      sim.validate();
      require(plant_domain.lower[1] > 0.0, "CoDesignConfig: stabilizer area bounds must be positive");
    } else {
      require(synthetic.plant_target.size() == 2, "CoDesignConfig: synthetic plant target must have 2 entries");
    }
  }
};

struct InnerResult {
  PlantParams plant;
  ControlParams best_control;
  double reward = 0.0;  ///< best -J, NaN when every window diverged
  OptimizationTrace trace;
  int diverged_windows = 0;
};

namespace detail {

inline std::uint64_t plant_seed(std::uint64_t seed, const PlantParams& p) {
  return mix_seed(seed, std::bit_cast<std::uint64_t>(p.cm_offset), std::bit_cast<std::uint64_t>(p.stab_area));
}

inline std::unique_ptr<WindowedPlant> make_plant(const PlantParams& plant, const CoDesignConfig& cfg,
                                                 std::uint64_t seed) {
  if (cfg.model == PlantModel::kSyntheticQuadratic)
    return std::make_unique<SyntheticPlant>(plant, cfg.plant_domain, cfg.inner.control_domain, cfg.synthetic);
  return std::make_unique<SimulatedPlant>(plant, cfg.sim, cfg.inner.weights, seed);
}

}  // namespace detail

/// Full inner BO for one plant against a single running plant instance.
/// Each evaluation is one iteration window; rewards are -J.
inline InnerResult inner_loop_optimize(const PlantParams& plant, const CoDesignConfig& cfg,
                                       InnerRecording* rec = nullptr) {
  cfg.inner.validate();
  const InnerConfig& ic = cfg.inner;
  const std::uint64_t seed = detail::plant_seed(cfg.seed, plant);
  auto windowed = detail::make_plant(plant, cfg, seed);

  InnerResult res;
  res.plant = plant;
  Objective objective;
  objective.domain = ic.control_domain;
  objective.name = "inner";
  objective.evaluator = [&](const InputPoint& x) {
    const double cost = windowed->run_window(x[0], ic.window, rec);
    if (!std::isfinite(cost)) {
      ++res.diverged_windows;
      return std::numeric_limits<double>::quiet_NaN();
    }
    return -cost;
  };

  const Dataset init = initial_dataset(objective, ic.initial_points, seed);
  BoConfig bo;
  bo.criterion = ic.criterion;
  bo.budget = ic.max_windows - ic.initial_points;
  bo.fit = ic.fit;
  bo.search = ic.search;
  bo.seed = seed;
  bo.parallel_evaluations = false;
  res.trace = run_sequential_bo(objective, init, bo);

  const int windows = static_cast<int>(res.trace.evaluations.size());
  if (res.diverged_windows >= windows) {
    res.reward = std::numeric_limits<double>::quiet_NaN();
    res.best_control.pitch_setpoint = ic.control_domain.lower[0];
  } else {
    // penalized windows never beat a finite one, so the trace best is finite
    res.reward = res.trace.best_reward();
    res.best_control = ControlParams::from_vector(res.trace.best_point());
  }
  return res;
}

struct CoDesignResult {
  PlantParams best_plant;
  ControlParams best_control;
  double best_cost = 0.0;  ///< J at the best (plant, control) pair
  OptimizationTrace outer_trace;
  /// Inner run of every outer evaluation, in outer-trace order.
  std::vector<InnerResult> inner_runs;
  int diverged_candidates = 0;

  /// Inner-run lookup by plant candidate.
  const InnerResult* inner_for(const PlantParams& p) const {
    for (const auto& r : inner_runs)
      if (r.plant == p) return &r;
    return nullptr;
  }
};

/// Nested co-design: batch BO over plant parameters whose objective is the
/// best reward of a full inner BO over the control parameter.
inline CoDesignResult run_codesign(const CoDesignConfig& cfg) {
  cfg.validate();
  std::mutex mu;
  std::map<std::pair<std::uint64_t, std::uint64_t>, InnerResult> runs;
  auto key = [](const PlantParams& p) {
    return std::make_pair(std::bit_cast<std::uint64_t>(p.cm_offset), std::bit_cast<std::uint64_t>(p.stab_area));
  };

  Objective outer;
  outer.domain = cfg.plant_domain;
  outer.name = "codesign";
  outer.evaluator = [&](const InputPoint& x) {
    const PlantParams plant = PlantParams::from_vector(x);
    InnerResult r = inner_loop_optimize(plant, cfg);
    const double reward = r.reward;
    std::lock_guard lock(mu);
    runs.insert_or_assign(key(plant), std::move(r));
    return reward;
  };

  const Dataset init = initial_dataset(outer, cfg.initial_points, cfg.seed);
  BoConfig bo;
  bo.criterion = cfg.criterion;
  bo.budget = cfg.budget;
  bo.fit = cfg.fit;
  bo.search = cfg.search;
  bo.lipschitz = cfg.lipschitz;
  bo.seed = cfg.seed;
  bo.parallel_evaluations = cfg.parallel_evaluations;

  CoDesignResult res;
  res.outer_trace = run_batch_bo(outer, init, cfg.batch_size, bo);

  double best_reward = -std::numeric_limits<double>::infinity();
  for (auto& e : res.outer_trace.evaluations) {
    const PlantParams plant = PlantParams::from_vector(e.point);
    auto it = runs.find(key(plant));
    require(it != runs.end(), "run_codesign: missing inner run");
    if (!std::isfinite(it->second.reward)) {
      ++res.diverged_candidates;
      e.penalized = true;
    } else if (it->second.reward > best_reward) {
      best_reward = it->second.reward;
      res.best_plant = plant;
      res.best_control = it->second.best_control;
    }
    res.inner_runs.push_back(it->second);
  }
  if (std::isfinite(best_reward)) {
    res.best_cost = -best_reward;
  } else {
    res.best_cost = std::numeric_limits<double>::quiet_NaN();
    res.outer_trace.message = "every plant candidate diverged";
  }
  return res;
}

}  // namespace cobo

#endif  // COBO_CODESIGN_HPP
