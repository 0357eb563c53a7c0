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

#ifndef COBO_GP_HPP
#define COBO_GP_HPP

#include <algorithm>
#include <atomic>
#include <memory>
#include <numbers>
#include <optional>
#include <random>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "cobo/common.hpp"
#include "cobo/optim.hpp"

namespace cobo {

/// Observed (input, reward) pairs. `noise_variance` is the observation noise
/// in reward units squared; it is only used when the fit pins the noise.
struct Dataset {
  std::vector<InputPoint> inputs;
  std::vector<double> rewards;
  double noise_variance = 0.0;

  std::size_t size() const { return inputs.size(); }
  bool empty() const { return inputs.empty(); }
  Eigen::Index dim() const { return inputs.empty() ? 0 : inputs.front().size(); }

  void append(const InputPoint& x, double reward) {
    inputs.push_back(x);
    rewards.push_back(reward);
  }

  void validate() const {
    require(inputs.size() == rewards.size(), "Dataset: inputs and rewards differ in length");
    require(noise_variance >= 0.0 && std::isfinite(noise_variance),
            "Dataset: noise variance must be finite and nonnegative");
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      require(inputs[i].size() == dim(), "Dataset: inconsistent input dimension");
      require(all_finite(inputs[i]), "Dataset: non-finite input at index " + std::to_string(i));
      require(std::isfinite(rewards[i]), "Dataset: non-finite reward at index " + std::to_string(i));
    }
  }

  std::size_t argmax() const {
    require(!rewards.empty(), "Dataset: empty");
    return static_cast<std::size_t>(std::max_element(rewards.begin(), rewards.end()) - rewards.begin());
  }

  double max_reward() const { return rewards[argmax()]; }
};

/// SE kernel hyperparameters. Lengthscales live in whatever coordinates the
/// model was conditioned in (the unit box for fitted models).
struct Hyperparameters {
  double signal_variance = 1.0;
  Vector lengthscales;
  double noise_variance = 0.0;

  void validate(Eigen::Index dim) const {
    require(std::isfinite(signal_variance) && signal_variance > 0.0,
            "Hyperparameters: signal variance must be positive");
    require(lengthscales.size() == dim, "Hyperparameters: lengthscale count != input dimension");
    require((lengthscales.array() > 0.0).all() && lengthscales.allFinite(),
            "Hyperparameters: lengthscales must be positive");
    require(std::isfinite(noise_variance) && noise_variance >= 0.0,
            "Hyperparameters: noise variance must be nonnegative");
  }

  bool operator==(const Hyperparameters& o) const {
    return signal_variance == o.signal_variance && noise_variance == o.noise_variance &&
           lengthscales.size() == o.lengthscales.size() && lengthscales == o.lengthscales;
  }
};

/// Squared-exponential covariance between two points.
inline double kernel_eval(const InputPoint& a, const InputPoint& b, const Hyperparameters& hyper) {
  if (a.size() != b.size() || a.size() != hyper.lengthscales.size())
    throw InvalidArgument("kernel_eval: dimension mismatch");
  const double r2 = ((a - b).array() / hyper.lengthscales.array()).square().sum();
  return hyper.signal_variance * std::exp(-0.5 * r2);
}

/// Noise-free kernel matrix over the rows of `X`.
inline Matrix kernel_matrix(const Matrix& X, const Hyperparameters& hyper) {
  const Eigen::Index n = X.rows();
  Matrix K(n, n);
  const Eigen::ArrayXd inv_ls = hyper.lengthscales.array().inverse();
  for (Eigen::Index i = 0; i < n; ++i) {
    K(i, i) = hyper.signal_variance;
    for (Eigen::Index j = 0; j < i; ++j) {
      const double r2 = ((X.row(i) - X.row(j)).array().transpose() * inv_ls).square().sum();
      K(i, j) = K(j, i) = hyper.signal_variance * std::exp(-0.5 * r2);
    }
  }
  return K;
}

struct JitteredCholesky {
  Matrix lower;
  double jitter = 0.0;
};

/// Cholesky of `K`. On failure retries with jitter 1e-10 * sigma0^2, growing
/// 10x per attempt up to 1e-4 * sigma0^2, then throws NumericDegeneracy.
inline JitteredCholesky jittered_cholesky(const Matrix& K, double signal_variance) {
  Eigen::LLT<Matrix> llt(K);
  if (llt.info() == Eigen::Success && llt.matrixL().toDenseMatrix().diagonal().allFinite())
    return {llt.matrixL(), 0.0};
  const Eigen::Index n = K.rows();
  for (double rel = 1e-10; rel <= 1e-4 * (1.0 + 1e-9); rel *= 10.0) {
    const double jitter = rel * signal_variance;
    llt.compute(K + jitter * Matrix::Identity(n, n));
    if (llt.info() == Eigen::Success) return {llt.matrixL(), jitter};
  }
  throw NumericDegeneracy("covariance matrix not positive definite after jitter escalation");
}

namespace detail {

inline Matrix stack_rows(const std::vector<InputPoint>& pts) {
  Matrix X(static_cast<Eigen::Index>(pts.size()), pts.empty() ? 0 : pts.front().size());
  for (std::size_t i = 0; i < pts.size(); ++i) X.row(static_cast<Eigen::Index>(i)) = pts[i].transpose();
  return X;
}

constexpr double kLog2Pi = 1.8378770664093454835606594728112;

/// Log marginal likelihood and, if `grad` is non-null, its gradient with
/// respect to (log sigma0^2, log lengthscales..., [log noise]).
inline double lml_with_gradient(const Matrix& X, const Vector& y, const Hyperparameters& hyper,
                                Vector* grad, bool noise_in_gradient) {
  const Eigen::Index n = X.rows();
  const Eigen::Index d = X.cols();
  const Matrix Kf = kernel_matrix(X, hyper);
  const Matrix K = Kf + hyper.noise_variance * Matrix::Identity(n, n);
  const JitteredCholesky chol = jittered_cholesky(K, hyper.signal_variance);
  const auto L = chol.lower.triangularView<Eigen::Lower>();
  const Vector alpha = L.transpose().solve(L.solve(y));
  const double log_det = 2.0 * chol.lower.diagonal().array().log().sum();
  const double value = -0.5 * y.dot(alpha) - 0.5 * log_det - 0.5 * static_cast<double>(n) * kLog2Pi;

  if (grad != nullptr) {
    const Matrix Kinv = L.transpose().solve(L.solve(Matrix::Identity(n, n)));
    const Matrix W = alpha * alpha.transpose() - Kinv;
    grad->resize(1 + d + (noise_in_gradient ? 1 : 0));
    (*grad)[0] = 0.5 * (W.array() * Kf.array()).sum();
    for (Eigen::Index k = 0; k < d; ++k) {
      const double inv_l2 = 1.0 / (hyper.lengthscales[k] * hyper.lengthscales[k]);
      double acc = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < i; ++j) {
          const double diff = X(i, k) - X(j, k);
          acc += 2.0 * W(i, j) * Kf(i, j) * diff * diff * inv_l2;
        }
      }
      (*grad)[1 + k] = 0.5 * acc;
    }
    if (noise_in_gradient) (*grad)[1 + d] = 0.5 * hyper.noise_variance * W.trace();
  }
  return value;
}

}  // namespace detail

/// log p(y | X, hyper) on the dataset exactly as given (no normalization).
inline double log_marginal_likelihood(const Dataset& data, const Hyperparameters& hyper) {
  data.validate();
  require(!data.empty(), "log_marginal_likelihood: empty dataset");
  hyper.validate(data.dim());
  return detail::lml_with_gradient(detail::stack_rows(data.inputs), from_std(data.rewards), hyper,
                                   nullptr, false);
}

/// Affine maps between raw coordinates/rewards and the model's internal
/// unit-box inputs and standardized rewards.
struct Scaling {
  Vector input_offset;
  Vector input_scale;
  double reward_mean = 0.0;
  double reward_std = 1.0;

  static Scaling identity(Eigen::Index dim) {
    return {Vector::Zero(dim), Vector::Ones(dim), 0.0, 1.0};
  }

  /// Inputs mapped to the unit box of `domain`; rewards centered and divided
  /// by their sample standard deviation (1 when the rewards are constant).
  static Scaling standardize(const BoxDomain& domain, const std::vector<double>& rewards) {
    Scaling s{domain.lower, domain.width(), 0.0, 1.0};
    if (rewards.empty()) return s;
    const double n = static_cast<double>(rewards.size());
    double mean = 0.0;
    for (double r : rewards) mean += r;
    mean /= n;
    double ss = 0.0;
    for (double r : rewards) ss += (r - mean) * (r - mean);
    const double sd = rewards.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    s.reward_mean = mean;
    s.reward_std = (sd > 1e-12 * std::max(1.0, std::abs(mean))) ? sd : 1.0;
    return s;
  }

  Vector to_model(const Vector& x) const { return ((x - input_offset).array() / input_scale.array()).matrix(); }
  Vector from_model(const Vector& u) const { return input_offset + (u.array() * input_scale.array()).matrix(); }
};

struct Prediction {
  double mean = 0.0;
  double variance = 0.0;
};

/// A GP conditioned on a dataset. Immutable once built; safe to share
/// between threads for prediction.
class GpModel {
 public:
  /// Conditions on `data` with fixed hyperparameters, which are interpreted in
  /// the scaled coordinates defined by `scaling`.
  static GpModel condition(Dataset data, Hyperparameters hyper, Scaling scaling) {
    data.validate();
    require(!data.empty(), "GpModel::condition: empty dataset");
    require(scaling.input_offset.size() == data.dim() && scaling.input_scale.size() == data.dim(),
            "GpModel::condition: scaling dimension mismatch");
    hyper.validate(data.dim());

    GpModel m;
    m.data_ = std::move(data);
    m.hyper_ = std::move(hyper);
    m.scaling_ = std::move(scaling);
    const Eigen::Index n = static_cast<Eigen::Index>(m.data_.size());
    m.X_.resize(n, m.data_.dim());
    m.y_.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      m.X_.row(i) = m.scaling_.to_model(m.data_.inputs[static_cast<std::size_t>(i)]).transpose();
      m.y_[i] = (m.data_.rewards[static_cast<std::size_t>(i)] - m.scaling_.reward_mean) / m.scaling_.reward_std;
    }
    const Matrix K = kernel_matrix(m.X_, m.hyper_) + m.hyper_.noise_variance * Matrix::Identity(n, n);
    JitteredCholesky chol = jittered_cholesky(K, m.hyper_.signal_variance);
    m.L_ = std::move(chol.lower);
    m.jitter_ = chol.jitter;
    auto solve = [&m](const Vector& b) {
      return Vector(m.L_.transpose().triangularView<Eigen::Upper>().solve(m.L_.triangularView<Eigen::Lower>().solve(b)));
    };
    m.alpha_ = solve(m.y_);
    // one refinement step with the residual accumulated in extended precision
    {
      const Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> Kl =
          K.cast<long double>() + static_cast<long double>(m.jitter_) *
                                      Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>::Identity(n, n);
      const Vector r = (m.y_.cast<long double>() - Kl * m.alpha_.cast<long double>()).cast<double>();
      m.alpha_ += solve(r);
    }
    m.inv_ls2_ = m.hyper_.lengthscales.array().square().inverse();
    m.log_likelihood_ = -0.5 * m.y_.dot(m.alpha_) - m.L_.diagonal().array().log().sum() -
                        0.5 * static_cast<double>(n) * detail::kLog2Pi;
    return m;
  }

  Eigen::Index dim() const { return X_.cols(); }
  const Dataset& dataset() const { return data_; }
  const Hyperparameters& hyper() const { return hyper_; }
  const Scaling& scaling() const { return scaling_; }
  const Matrix& chol_factor() const { return L_; }
  const Vector& alpha() const { return alpha_; }
  const Matrix& scaled_inputs() const { return X_; }
  const Vector& scaled_rewards() const { return y_; }
  double jitter() const { return jitter_; }
  /// Log marginal likelihood of the standardized rewards.
  double log_likelihood() const { return log_likelihood_; }
  long variance_clamp_warnings() const { return clamp_warnings_->load(); }

  /// Prediction at a point given in scaled (model) coordinates; mean and
  /// variance are returned in raw reward units.
  Prediction predict_scaled(const Vector& u) const {
    require(u.size() == dim(), "GpModel::predict: query dimension mismatch");
    const Vector k = cross_covariance(u);
    Prediction p;
    p.mean = scaling_.reward_mean + scaling_.reward_std * k.dot(alpha_);
    const Vector v = L_.triangularView<Eigen::Lower>().solve(k);
    double var = hyper_.signal_variance - v.squaredNorm();
    if (var < -1e-6 * hyper_.signal_variance) clamp_warnings_->fetch_add(1);
    p.variance = scaling_.reward_std * scaling_.reward_std * std::max(0.0, var);
    return p;
  }

  Prediction predict(const InputPoint& x) const {
    require(x.size() == dim(), "GpModel::predict: query dimension mismatch");
    return predict_scaled(scaling_.to_model(x));
  }

  /// Gradient of the raw-unit predictive mean with respect to scaled inputs.
  Vector mean_gradient_scaled(const Vector& u) const {
    require(u.size() == dim(), "GpModel::mean_gradient: query dimension mismatch");
    Vector g = Vector::Zero(dim());
    for (Eigen::Index i = 0; i < X_.rows(); ++i) {
      const Eigen::ArrayXd diff = u.array() - X_.row(i).transpose().array();
      const double k = hyper_.signal_variance * std::exp(-0.5 * (diff.square() * inv_ls2_).sum());
      g.array() -= alpha_[i] * k * diff * inv_ls2_;
    }
    return scaling_.reward_std * g;
  }

 private:
  GpModel() : clamp_warnings_(std::make_shared<std::atomic<long>>(0)) {}

  Vector cross_covariance(const Vector& u) const {
    Vector k(X_.rows());
    for (Eigen::Index i = 0; i < X_.rows(); ++i) {
      const double r2 = ((u.array() - X_.row(i).transpose().array()).square() * inv_ls2_).sum();
      k[i] = hyper_.signal_variance * std::exp(-0.5 * r2);
    }
    return k;
  }

  Dataset data_;
  Hyperparameters hyper_;
  Scaling scaling_;
  Matrix X_;
  Vector y_;
  Matrix L_;
  Vector alpha_;
  Eigen::ArrayXd inv_ls2_;
  double jitter_ = 0.0;
  double log_likelihood_ = 0.0;
  std::shared_ptr<std::atomic<long>> clamp_warnings_;
};

inline Prediction predict(const GpModel& model, const InputPoint& query) { return model.predict(query); }

/// Analytic gradient of the predictive mean, taken with respect to the
/// model's unit-box coordinates (raw reward units per unit of normalized input).
inline Vector predict_mean_gradient(const GpModel& model, const InputPoint& query) {
  return model.mean_gradient_scaled(model.scaling().to_model(query));
}

struct FitConfig {
  int restarts = 8;
  double init_lengthscale_min = 1e-2;
  double init_lengthscale_max = 1e1;
  double lengthscale_min = 5e-3;
  double lengthscale_max = 50.0;
  double signal_variance_min = 1e-4;
  double signal_variance_max = 1e3;
  bool fit_noise = true;
  double noise_floor = 1e-8;
  double noise_ceiling = 1.0;
  int max_iterations = 200;
  std::uint64_t seed = 0;
};

/// Thrown when every restart of the hyperparameter search fails. Carries the
/// best model found along the way, if any.
class FitFailure : public std::runtime_error {
 public:
  FitFailure(const std::string& what, std::optional<GpModel> best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const std::optional<GpModel>& best_partial() const { return best_; }

 private:
  std::optional<GpModel> best_;
};

/// Starting points used by `fit`, in (log sigma0^2, log lengthscales, [log noise]).
inline std::vector<Vector> fit_initial_points(Eigen::Index dim, const FitConfig& cfg) {
  std::mt19937_64 rng(mix_seed(cfg.seed, 0x6770u));
  std::uniform_real_distribution<double> unif(std::log(cfg.init_lengthscale_min),
                                              std::log(cfg.init_lengthscale_max));
  const Eigen::Index np = 1 + dim + (cfg.fit_noise ? 1 : 0);
  std::vector<Vector> starts;
  for (int r = 0; r < std::max(1, cfg.restarts); ++r) {
    Vector t(np);
    t[0] = 0.0;
    for (Eigen::Index d = 0; d < dim; ++d) t[1 + d] = unif(rng);
    if (cfg.fit_noise) t[1 + dim] = std::log(std::max(cfg.noise_floor, 1e-3));
    starts.push_back(t);
  }
  return starts;
}

/// Fits SE hyperparameters by multistart maximization of the log marginal
/// likelihood. Inputs are mapped to the unit box of `domain` and rewards are
/// standardized; the returned model predicts in raw units.
inline GpModel fit(const Dataset& data, const BoxDomain& domain, const FitConfig& cfg = {}) {
  data.validate();
  domain.validate();
  require(data.size() >= 2, "fit: need at least 2 observations");
  require(data.dim() == domain.dim(), "fit: dataset and domain dimensions differ");

  const Scaling scaling = Scaling::standardize(domain, data.rewards);
  const Eigen::Index d = data.dim();
  const Eigen::Index n = static_cast<Eigen::Index>(data.size());
  Matrix X(n, d);
  Vector y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    X.row(i) = scaling.to_model(data.inputs[static_cast<std::size_t>(i)]).transpose();
    y[i] = (data.rewards[static_cast<std::size_t>(i)] - scaling.reward_mean) / scaling.reward_std;
  }
  // pinned noise is the dataset's variance in standardized units, floored
  const double pinned_noise =
      std::max(cfg.noise_floor, data.noise_variance / (scaling.reward_std * scaling.reward_std));

  const Eigen::Index np = 1 + d + (cfg.fit_noise ? 1 : 0);
  Vector lo(np), hi(np);
  lo[0] = std::log(cfg.signal_variance_min);
  hi[0] = std::log(cfg.signal_variance_max);
  lo.segment(1, d).setConstant(std::log(cfg.lengthscale_min));
  hi.segment(1, d).setConstant(std::log(cfg.lengthscale_max));
  if (cfg.fit_noise) {
    lo[1 + d] = std::log(cfg.noise_floor);
    hi[1 + d] = std::log(cfg.noise_ceiling);
  }

  auto unpack = [&](const Vector& t) {
    Hyperparameters h;
    h.signal_variance = std::exp(t[0]);
    h.lengthscales = t.segment(1, d).array().exp().matrix();
    h.noise_variance = cfg.fit_noise ? std::clamp(std::exp(t[1 + d]), cfg.noise_floor, cfg.noise_ceiling) : pinned_noise;
    return h;
  };

  // Minimize the negative log likelihood.
  opt::ValueGrad objective = [&](const Vector& t, Vector& g) {
    try {
      Vector grad;
      const double v = detail::lml_with_gradient(X, y, unpack(t), &grad, cfg.fit_noise);
      if (!std::isfinite(v) || !grad.allFinite()) return std::numeric_limits<double>::infinity();
      g = -grad;
      return -v;
    } catch (const NumericDegeneracy&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  std::optional<Vector> best_t;
  double best_value = std::numeric_limits<double>::infinity();
  for (const Vector& start : fit_initial_points(d, cfg)) {
    const opt::BoundedMinResult r = opt::minimize_box_bfgs(objective, start, lo, hi, cfg.max_iterations);
    if (std::isfinite(r.value) && r.value < best_value) {
      best_value = r.value;
      best_t = r.x;
    }
  }

  if (!best_t) {
    throw FitFailure("fit: every hyperparameter restart failed numerically", std::nullopt);
  }
  try {
    return GpModel::condition(data, unpack(*best_t), scaling);
  } catch (const NumericDegeneracy& e) {
    throw FitFailure(std::string("fit: final conditioning failed: ") + e.what(), std::nullopt);
  }
}

}  // namespace cobo

#endif  // COBO_GP_HPP
