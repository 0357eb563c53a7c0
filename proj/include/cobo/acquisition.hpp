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

#ifndef COBO_ACQUISITION_HPP
#define COBO_ACQUISITION_HPP

#include <numbers>

#include "cobo/gp.hpp"
#include "cobo/lowdiscrepancy.hpp"
#include "cobo/optim.hpp"
#include "cobo/penalizer.hpp"

namespace cobo {

inline double normal_pdf(double z) { return std::exp(-0.5 * z * z) * (0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2); }

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z * (0.5 * std::numbers::sqrt2)); }

/// Closed-form expected improvement of N(mean, stddev^2) over `incumbent`.
/// Zero when the standard deviation is zero; never negative.
inline double expected_improvement(double mean, double stddev, double incumbent) {
  if (!(stddev > 0.0)) return 0.0;
  const double diff = mean - incumbent;
  const double z = diff / stddev;
  return std::max(0.0, diff * normal_cdf(z) + stddev * normal_pdf(z));
}

inline double expected_improvement(const GpModel& model, const InputPoint& query, double incumbent_best) {
  const Prediction p = model.predict(query);
  return expected_improvement(p.mean, std::sqrt(p.variance), incumbent_best);
}

/// Softplus, ln(1 + e^v), evaluated without overflow.
inline double positive_transform(double value) {
  return value > 0.0 ? value + std::log1p(std::exp(-value)) : std::log1p(std::exp(value));
}

enum class SurfaceMode {
  kExpectedImprovement,  ///< g(EI) times the penalizer product
  kVariance,             ///< posterior variance times the penalizer product
};

/// g(EI(p)) * prod_j phi(p; p_j) over a fixed model. With no centers this is
/// the plain (transformed) EI surface. EI is measured in standardized reward
/// units so the softplus acts on a scale-free quantity.
class AcquisitionSurface {
 public:
  AcquisitionSurface(const GpModel& model, const BoxDomain& domain)
      : model_(&model), domain_(domain), incumbent_best_(model.dataset().max_reward()) {
    require(domain.dim() == model.dim(), "AcquisitionSurface: domain dimension mismatch");
  }

  const GpModel& model() const { return *model_; }
  const BoxDomain& domain() const { return domain_; }
  double incumbent_best() const { return incumbent_best_; }
  const std::vector<InputPoint>& centers() const { return centers_; }
  const PenalizerParams& penalizer_params() const { return params_; }
  SurfaceMode mode() const { return mode_; }

  void set_mode(SurfaceMode mode) { mode_ = mode; }

  void set_penalizer_params(const PenalizerParams& params) { params_ = params; }

  /// Adds a penalizer centered at `center` (raw coordinates).
  void add_center(const InputPoint& center) {
    require(center.size() == domain_.dim(), "AcquisitionSurface: center dimension mismatch");
    const Vector uc = model_->scaling().to_model(center);
    const Prediction p = model_->predict_scaled(uc);
    centers_.push_back(center);
    center_model_coords_.push_back(uc);
    center_predictions_.push_back(p);
  }

  struct Evaluation {
    double value = 0.0;
    double ei = 0.0;
    double variance = 0.0;
  };

  /// Surface value at `u` in the domain's unit box.
  Evaluation evaluate_unit(const Vector& u) const {
    const Vector um = model_->scaling().to_model(domain_.from_unit(u));
    const Prediction p = model_->predict_scaled(um);
    Evaluation e;
    e.variance = p.variance;
    const double std_scale = model_->scaling().reward_std;
    e.ei = expected_improvement(p.mean, std::sqrt(p.variance), incumbent_best_) / std_scale;
    double value = mode_ == SurfaceMode::kExpectedImprovement ? positive_transform(e.ei)
                                                              : p.variance / (std_scale * std_scale);
    for (std::size_t j = 0; j < centers_.size(); ++j) {
      const double dist = (um - center_model_coords_[j]).norm();
      if (dist <= kExclusionRadius) return {0.0, e.ei, e.variance};
      value *= local_penalizer_value(dist, center_predictions_[j].mean, center_predictions_[j].variance, params_);
    }
    e.value = value;
    return e;
  }

  Evaluation evaluate(const InputPoint& x) const { return evaluate_unit(domain_.to_unit(x)); }

  /// Points closer than this (normalized) to a center score zero.
  static constexpr double kExclusionRadius = 1e-9;

 private:
  const GpModel* model_;
  BoxDomain domain_;
  double incumbent_best_;
  SurfaceMode mode_ = SurfaceMode::kExpectedImprovement;
  PenalizerParams params_;
  std::vector<InputPoint> centers_;
  std::vector<Vector> center_model_coords_;
  std::vector<Prediction> center_predictions_;
};

struct SearchConfig {
  int screening_per_dim = 2048;
  int top_k = 5;
  int refine_iterations = 200;
  double initial_step = 0.05;
  std::uint64_t seed = 0;
};

struct SearchResult {
  InputPoint point;
  Vector unit_point;
  double value = 0.0;
  double ei = 0.0;
  double variance = 0.0;
  double best_screen_value = 0.0;
};

/// Two-stage maximization: quasi-random screening of the unit box, then
/// compass refinement from the best few screen points. Ties go to the larger
/// posterior variance.
inline SearchResult maximize_acquisition_detailed(const AcquisitionSurface& surface, const BoxDomain& domain,
                                                  const SearchConfig& cfg) {
  require(domain.dim() == surface.domain().dim(), "maximize_acquisition: domain dimension mismatch");
  const Eigen::Index d = domain.dim();
  auto score = [&](const Vector& u) {
    const auto e = surface.evaluate_unit(u);
    return opt::Scored{e.value, e.variance};
  };

  const HaltonSequence seq(d, cfg.seed);
  const std::size_t n = static_cast<std::size_t>(std::max(1, cfg.screening_per_dim)) * static_cast<std::size_t>(d);
  std::vector<std::pair<opt::Scored, Vector>> screened;
  screened.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vector u = seq(i);
    screened.emplace_back(score(u), std::move(u));
  }
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, cfg.top_k)), screened.size());
  // stable ordering: equal scores keep their sequence order
  std::stable_sort(screened.begin(), screened.end(),
                   [](const auto& a, const auto& b) { return opt::better(a.first, b.first); });

  opt::PatternResult best{screened.front().second, screened.front().first, 0};
  for (std::size_t i = 0; i < k; ++i) {
    auto r = opt::pattern_search(score, screened[i].second, screened[i].first, cfg.refine_iterations,
                                 cfg.initial_step);
    if (opt::better(r.score, best.score)) best = std::move(r);
  }

  SearchResult res;
  res.unit_point = best.point;
  res.point = domain.from_unit(best.point);
  const auto e = surface.evaluate_unit(best.point);
  res.value = e.value;
  res.ei = e.ei;
  res.variance = e.variance;
  res.best_screen_value = screened.front().first.value;
  return res;
}

inline InputPoint maximize_acquisition(const AcquisitionSurface& surface, const BoxDomain& domain,
                                       const SearchConfig& cfg) {
  return maximize_acquisition_detailed(surface, domain, cfg).point;
}

}  // namespace cobo

#endif  // COBO_ACQUISITION_HPP
