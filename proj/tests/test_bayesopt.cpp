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

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "cobo/bayesopt.hpp"
#include "oracles.hpp"

namespace cobo {
namespace {

TEST(CheckConvergence, Examples) {
  ConvergenceCriterion c;
  EXPECT_TRUE(check_convergence({5.0, 5.0, 5.0}, c));
  EXPECT_FALSE(check_convergence({1.0, 2.0, 2.0005}, c));
  EXPECT_FALSE(check_convergence({5.0, 5.0}, c));
  EXPECT_FALSE(check_convergence({}, c));
}

TEST(CheckConvergence, MatchesDirectFormula) {
  std::mt19937_64 rng(24);
  std::uniform_int_distribution<int> len(0, 12), step_kind(0, 2), window(1, 4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    ConvergenceCriterion c;
    c.window = window(rng);
    c.epsilon = std::pow(10.0, -4.0 + 3.0 * u(rng));
    std::vector<double> seq;
    double v = u(rng);
    const int n = len(rng);
    for (int i = 0; i < n; ++i) {
      const int k = step_kind(rng);
      v += k == 0 ? 0.0 : (k == 1 ? 0.5 * c.epsilon * u(rng) : 3.0 * c.epsilon * u(rng));
      seq.push_back(v);
    }
    EXPECT_EQ(check_convergence(seq, c), oracle::stall_rule(seq, c.epsilon, c.window)) << "trial " << trial;
  }
}

TEST(CheckConvergence, FlagFlipsAtFirstQualifyingIndex) {
  std::mt19937_64 rng(25);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ConvergenceCriterion c;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> seq;
    double v = 0.0;
    int first = -1;
    for (int i = 0; i < 15; ++i) {
      v += u(rng) < 0.6 ? 0.0 : 0.01;
      seq.push_back(v);
      const bool now = check_convergence(seq, c);
      if (now && first < 0) first = i;
      if (first < 0) EXPECT_FALSE(now);
    }
    if (first >= 0) {
      const std::vector<double> prefix(seq.begin(), seq.begin() + first);
      EXPECT_FALSE(oracle::stall_rule(prefix, c.epsilon, c.window));
      EXPECT_TRUE(oracle::stall_rule(std::vector<double>(seq.begin(), seq.begin() + first + 1), c.epsilon, c.window));
    }
  }
}

Objective quadratic_1d() {
  return {[](const InputPoint& x) { return -(x[0] - 0.3) * (x[0] - 0.3); }, BoxDomain::unit(1), "quadratic-1d"};
}

Objective branin() {
  return {[](const InputPoint& x) {
            const double b = 5.1 / (4.0 * M_PI * M_PI), c = 5.0 / M_PI, t = 1.0 / (8.0 * M_PI);
            const double a = x[1] - b * x[0] * x[0] + c * x[0] - 6.0;
            return -(a * a + 10.0 * (1.0 - t) * std::cos(x[0]) + 10.0);
          },
          BoxDomain((Vector(2) << -5.0, 0.0).finished(), (Vector(2) << 10.0, 15.0).finished()), "branin"};
}

Objective hartmann_like_3d() {
  return {[](const InputPoint& x) { return std::exp(-4.0 * (x.array() - 0.6).square().sum()) + 0.3 * std::sin(5.0 * x[0]); },
          BoxDomain::unit(3), "bump-3d"};
}

TEST(SequentialBo, QuadraticPeakFoundWithin15Evaluations) {
  BoConfig cfg;
  cfg.budget = 13;
  cfg.criterion.epsilon = 1e-12;  // run the full budget
  const Objective obj = quadratic_1d();
  const OptimizationTrace t = run_sequential_bo(obj, initial_dataset(obj, 2, 0), cfg);
  ASSERT_LE(t.evaluations.size(), 15u);
  // dense-grid oracle for the argmax
  double best_x = 0.0, best = -1e300;
  for (int i = 0; i <= 100000; ++i) {
    const double x = i / 1e5;
    if (obj.evaluator(Vector::Constant(1, x)) > best) {
      best = obj.evaluator(Vector::Constant(1, x));
      best_x = x;
    }
  }
  EXPECT_NEAR(t.best_point()[0], best_x, 0.02);
}

TEST(SequentialBo, ConstantObjectiveConvergesAfterWindowPlusOne) {
  const Objective obj{[](const InputPoint&) { return 4.0; }, BoxDomain::unit(2), "constant"};
  BoConfig cfg;
  const OptimizationTrace t = run_sequential_bo(obj, initial_dataset(obj, 2, 0), cfg);
  EXPECT_EQ(t.stop_reason, StopReason::kConverged);
  EXPECT_EQ(static_cast<int>(t.iterations.size()), cfg.criterion.window + 1);
  EXPECT_EQ(t.converged_at(), cfg.criterion.window + 1);
}

TEST(SequentialBo, BudgetExhaustion) {
  BoConfig cfg;
  cfg.budget = 4;
  cfg.criterion.epsilon = 1e-15;
  const Objective obj = branin();
  const OptimizationTrace t = run_sequential_bo(obj, initial_dataset(obj, 3, 1), cfg);
  EXPECT_EQ(t.stop_reason, StopReason::kBudgetExhausted);
  EXPECT_EQ(t.evaluations.size(), 7u);
  for (std::size_t i = 1; i < t.evaluations.size(); ++i)
    EXPECT_GE(t.evaluations[i].incumbent, t.evaluations[i - 1].incumbent);
}

TEST(SequentialBo, DeterministicUnderSeed) {
  BoConfig cfg;
  cfg.budget = 6;
  cfg.seed = 77;
  const Objective obj = branin();
  const Dataset init = initial_dataset(obj, 3, 77);
  EXPECT_TRUE(same_outcome(run_sequential_bo(obj, init, cfg), run_sequential_bo(obj, init, cfg)));
}

TEST(SequentialBo, NonFiniteRewardsArePenalized) {
  const Objective obj{[](const InputPoint& x) {
                        return x[0] > 0.5 ? std::numeric_limits<double>::quiet_NaN() : -x[0];
                      },
                      BoxDomain::unit(1), "half-broken"};
  Dataset init;
  init.append(Vector::Constant(1, 0.1), -0.1);
  init.append(Vector::Constant(1, 0.4), -0.4);
  BoConfig cfg;
  cfg.budget = 6;
  cfg.criterion.epsilon = 1e-15;
  const OptimizationTrace t = run_sequential_bo(obj, init, cfg);
  bool any = false;
  for (const auto& e : t.evaluations) {
    EXPECT_TRUE(std::isfinite(e.reward));
    if (e.penalized) {
      any = true;
      EXPECT_GT(e.point[0], 0.5);
      EXPECT_LE(e.reward, -0.4 - 9.0 * 0.4 + 1e-12);
    }
  }
  EXPECT_TRUE(any);
}

TEST(FailurePenalty, Values) {
  EXPECT_EQ(failure_penalty({}), -1e6);
  EXPECT_DOUBLE_EQ(failure_penalty({-1.0, -2.0}), -20.0);
  EXPECT_DOUBLE_EQ(failure_penalty({3.0, 1.0}), -8.0);
}

TEST(SequentialBo, ThrowingObjectiveStopsWithDiagnostic) {
  int calls = 0;
  const Objective obj{[&](const InputPoint& x) {
                        if (++calls > 2) throw std::runtime_error("rig offline");
                        return -x[0];
                      },
                      BoxDomain::unit(1), "throws"};
  BoConfig cfg;
  cfg.parallel_evaluations = false;
  const OptimizationTrace t = run_sequential_bo(obj, initial_dataset(obj, 2, 0), cfg);
  EXPECT_EQ(t.stop_reason, StopReason::kObjectiveFailure);
  EXPECT_EQ(t.message, "rig offline");
}

TEST(BatchBo, ReducesToSequentialOnThreeObjectives) {
  for (const Objective& obj : {quadratic_1d(), branin(), hartmann_like_3d()}) {
    BoConfig cfg;
    cfg.budget = 6;
    cfg.seed = 3;
    const Dataset init = initial_dataset(obj, 3, cfg.seed);
    EXPECT_TRUE(same_outcome(run_batch_bo(obj, init, 1, cfg), run_sequential_bo(obj, init, cfg))) << obj.name;
  }
}

TEST(BatchBo, BatchShapeAndBudget) {
  BoConfig cfg;
  cfg.budget = 10;
  cfg.criterion.epsilon = 1e-15;
  const Objective obj = branin();
  const OptimizationTrace t = run_batch_bo(obj, initial_dataset(obj, 3, 0), 3, cfg);
  EXPECT_EQ(t.iterations.size(), 3u);  // the partial fourth batch is not started
  for (const auto& it : t.iterations) EXPECT_EQ(it.points.size(), 3u);
  EXPECT_EQ(t.stop_reason, StopReason::kBudgetExhausted);
}

TEST(BatchBo, ParallelAndSerialEvaluationAgree) {
  BoConfig a;
  a.budget = 6;
  BoConfig b = a;
  b.parallel_evaluations = false;
  const Objective obj = hartmann_like_3d();
  const Dataset init = initial_dataset(obj, 3, 0);
  EXPECT_TRUE(same_outcome(run_batch_bo(obj, init, 3, a), run_batch_bo(obj, init, 3, b)));
}

TEST(IterationBestCriterion, UsesPerIterationRewards) {
  // constant objective: both quantities are flat
  const Objective obj{[](const InputPoint&) { return 1.0; }, BoxDomain::unit(1), "constant"};
  BoConfig cfg;
  cfg.criterion.quantity = ConvergenceCriterion::Quantity::kIterationBest;
  const OptimizationTrace t = run_sequential_bo(obj, initial_dataset(obj, 2, 0), cfg);
  EXPECT_EQ(t.converged_at(), 3);
}

TEST(TraceCsv, RoundTrip) {
  BoConfig cfg;
  cfg.budget = 4;
  const Objective obj = branin();
  const OptimizationTrace t = run_batch_bo(obj, initial_dataset(obj, 3, 2), 2, cfg);
  std::stringstream ss;
  write_trace_csv(ss, t);
  const auto back = read_trace_csv(ss);
  ASSERT_EQ(back.size(), t.evaluations.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].iteration, t.evaluations[i].iteration);
    EXPECT_EQ(back[i].batch_index, t.evaluations[i].batch_index);
    EXPECT_EQ(back[i].point, t.evaluations[i].point);
    EXPECT_EQ(back[i].reward, t.evaluations[i].reward);
    EXPECT_EQ(back[i].incumbent, t.evaluations[i].incumbent);
  }
}

TEST(InitialDesign, InsideDomainAndSeeded) {
  const BoxDomain dom((Vector(2) << -1.0, 5.0).finished(), (Vector(2) << 1.0, 6.0).finished());
  const auto a = initial_design(dom, 7, 3), b = initial_design(dom, 7, 3), c = initial_design(dom, 7, 4);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  for (const auto& p : a) EXPECT_TRUE(dom.contains(p));
}

}  // namespace
}  // namespace cobo
