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

#ifndef COBO_PENALIZER_HPP
#define COBO_PENALIZER_HPP

#include "cobo/gp.hpp"
#include "cobo/lowdiscrepancy.hpp"
#include "cobo/optim.hpp"

namespace cobo {

/// Lipschitz constant (reward units per unit of normalized input) and the
/// estimated maximum reward used by the local penalizers.
struct PenalizerParams {
  double lipschitz = 1.0;
  double reward_max = 0.0;
};

constexpr double kPenalizerVarianceFloor = 1e-12;
constexpr double kLipschitzFloor = 1e-4;

/// Penalizer value from precomputed center quantities. `distance` is in
/// normalized coordinates; `center_mean` / `center_variance` are the GP
/// posterior at the center, in raw reward units.
inline double local_penalizer_value(double distance, double center_mean, double center_variance,
                                    const PenalizerParams& params) {
  const double var = std::max(center_variance, kPenalizerVarianceFloor);
  const double z = (params.lipschitz * distance - params.reward_max + center_mean) / std::sqrt(2.0 * var);
  return 0.5 * std::erfc(-z);
}

/// Probability that `query` lies outside the ball around `center` that
/// cannot contain the maximizer. Distances use the model's unit box; the
/// spread is the posterior standard deviation at the center, which makes the
/// penalizer a monotone function of the distance.
inline double local_penalizer(const InputPoint& query, const InputPoint& center, const GpModel& model,
                              const PenalizerParams& params) {
  const Scaling& s = model.scaling();
  const Vector uq = s.to_model(query);
  const Vector uc = s.to_model(center);
  const Prediction pc = model.predict_scaled(uc);
  return local_penalizer_value((uq - uc).norm(), pc.mean, pc.variance, params);
}

/// Search budget for the sampled gradient-norm maximization.
struct LipschitzConfig {
  int samples_per_dim = 1024;
  int top_k = 5;
  int refine_iterations = 100;
  double initial_step = 0.05;
  std::uint64_t seed = 0;
};

/// Reward maximum is the best observed reward; the Lipschitz constant is the
/// largest predictive-mean gradient norm found by quasi-random screening plus
/// compass refinement, floored at 1e-4.
inline PenalizerParams estimate_penalizer_params(const GpModel& model, const BoxDomain& domain,
                                                 const LipschitzConfig& cfg = {}) {
  require(model.dataset().size() >= 2, "estimate_penalizer_params: model needs >= 2 observations");
  require(domain.dim() == model.dim(), "estimate_penalizer_params: domain dimension mismatch");
  PenalizerParams params;
  params.reward_max = model.dataset().max_reward();

  // Search in the domain's unit box, mapped into model coordinates.
  auto grad_norm = [&](const Vector& u) {
    const Vector x = domain.from_unit(u);
    return opt::Scored{model.mean_gradient_scaled(model.scaling().to_model(x)).norm(), 0.0};
  };

  const Eigen::Index d = domain.dim();
  const HaltonSequence seq(d, cfg.seed);
  const std::size_t n = static_cast<std::size_t>(cfg.samples_per_dim) * static_cast<std::size_t>(d);
  std::vector<std::pair<opt::Scored, Vector>> screened;
  screened.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vector u = seq(i);
    screened.emplace_back(grad_norm(u), std::move(u));
  }
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(cfg.top_k), screened.size());
  std::partial_sort(screened.begin(), screened.begin() + static_cast<std::ptrdiff_t>(k), screened.end(),
                    [](const auto& a, const auto& b) { return opt::better(a.first, b.first); });
  double best = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const auto r = opt::pattern_search(grad_norm, screened[i].second, screened[i].first,
                                       cfg.refine_iterations, cfg.initial_step);
    best = std::max(best, r.score.value);
  }
  params.lipschitz = std::max(best, kLipschitzFloor);
  return params;
}

}  // namespace cobo

#endif  // COBO_PENALIZER_HPP
