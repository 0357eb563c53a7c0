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

#ifndef COBO_OPTIM_HPP
#define COBO_OPTIM_HPP

#include <functional>
#include <limits>

#include "cobo/common.hpp"

namespace cobo {
namespace opt {

/// Objective value plus a secondary key used only to break exact ties.
struct Scored {
  double value = -std::numeric_limits<double>::infinity();
  double tie = -std::numeric_limits<double>::infinity();
};

inline bool better(const Scored& a, const Scored& b) {
  if (a.value != b.value) return a.value > b.value;
  return a.tie > b.tie;
}

struct PatternResult {
  Vector point;
  Scored score;
  int evaluations = 0;
};

/// Compass search maximizing `eval` over the unit box. Polls +/- step along
/// every axis, moves to the best improving poll, halves the step otherwise.
/// Never returns a point scoring worse than `start`.
template <typename Eval>
PatternResult pattern_search(Eval&& eval, const Vector& start, const Scored& start_score,
                             int iterations, double initial_step, double min_step = 1e-10) {
  PatternResult best{start, start_score, 0};
  double step = initial_step;
  for (int it = 0; it < iterations && step >= min_step; ++it) {
    Vector incumbent = best.point;
    PatternResult poll_best = best;
    for (Eigen::Index d = 0; d < start.size(); ++d) {
      for (double sign : {1.0, -1.0}) {
        Vector trial = incumbent;
        trial[d] = std::min(1.0, std::max(0.0, trial[d] + sign * step));
        if (trial[d] == incumbent[d]) continue;
        Scored s = eval(trial);
        ++best.evaluations;
        if (better(s, poll_best.score)) {
          poll_best.point = trial;
          poll_best.score = s;
        }
      }
    }
    if (better(poll_best.score, best.score)) {
      best.point = poll_best.point;
      best.score = poll_best.score;
    } else {
      step *= 0.5;
    }
  }
  return best;
}

struct BoundedMinResult {
  Vector x;
  double value = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
};

/// Value-and-gradient callback; returns +inf (or NaN) where the objective is
/// undefined so the line search backs off.
using ValueGrad = std::function<double(const Vector&, Vector&)>;

/// Projected BFGS with Armijo backtracking on a box. The inverse-Hessian
/// estimate is reset whenever a bound becomes active. Monotone: the returned
/// value is never above the value at the (clamped) start point.
inline BoundedMinResult minimize_box_bfgs(const ValueGrad& fg, const Vector& x0, const Vector& lo,
                                          const Vector& hi, int max_iterations = 200,
                                          double max_step = 2.0, double ftol = 1e-12,
                                          double gtol = 1e-8) {
  const Eigen::Index n = x0.size();
  auto project = [&](Vector x) {
    for (Eigen::Index i = 0; i < n; ++i) x[i] = std::min(hi[i], std::max(lo[i], x[i]));
    return x;
  };

  BoundedMinResult res;
  res.x = project(x0);
  Vector g(n);
  res.value = fg(res.x, g);
  if (!std::isfinite(res.value)) return res;

  Matrix H = Matrix::Identity(n, n);
  for (int it = 0; it < max_iterations; ++it) {
    res.iterations = it + 1;
    Vector pg = g;
    for (Eigen::Index i = 0; i < n; ++i) {
      if ((res.x[i] <= lo[i] && g[i] > 0) || (res.x[i] >= hi[i] && g[i] < 0)) pg[i] = 0.0;
    }
    if (pg.lpNorm<Eigen::Infinity>() < gtol) {
      res.converged = true;
      break;
    }

    Vector dir = -(H * g);
    bool reset = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      if ((res.x[i] <= lo[i] && dir[i] < 0) || (res.x[i] >= hi[i] && dir[i] > 0)) {
        dir[i] = 0.0;
        reset = true;
      }
    }
    if (reset || dir.dot(g) >= 0) {
      H.setIdentity();
      dir = -pg;
    }
    const double len = dir.norm();
    if (len > max_step) dir *= max_step / len;

    double t = 1.0;
    Vector x_new, g_new(n);
    double f_new = std::numeric_limits<double>::infinity();
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      x_new = project(res.x + t * dir);
      f_new = fg(x_new, g_new);
      if (std::isfinite(f_new) && f_new <= res.value + 1e-4 * g.dot(x_new - res.x)) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;

    Vector s = x_new - res.x;
    Vector y = g_new - g;
    const double f_old = res.value;
    res.x = x_new;
    res.value = f_new;
    g = g_new;

    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      const double rho = 1.0 / sy;
      Matrix I = Matrix::Identity(n, n);
      H = (I - rho * s * y.transpose()) * H * (I - rho * y * s.transpose()) + rho * s * s.transpose();
    }
    if (std::abs(f_old - f_new) <= ftol * (1.0 + std::abs(f_old))) {
      res.converged = true;
      break;
    }
  }
  return res;
}

}  // namespace opt
}  // namespace cobo

#endif  // COBO_OPTIM_HPP
