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

#ifndef COBO_COMMON_HPP
#define COBO_COMMON_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace cobo {

/// A point in an optimization domain. Coordinates are in the problem's raw
/// units unless a function says it works in the unit box.
using InputPoint = Eigen::VectorXd;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a covariance matrix stays indefinite after jitter escalation.
class NumericDegeneracy : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool all_finite(const Vector& v) { return v.allFinite(); }

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidArgument(message);
}

/// Axis-aligned box [lower, upper]. Most of the library works in the unit
/// box internally and maps back through this type.
struct BoxDomain {
  Vector lower;
  Vector upper;

  BoxDomain() = default;
  BoxDomain(Vector lo, Vector hi) : lower(std::move(lo)), upper(std::move(hi)) { validate(); }

  static BoxDomain unit(Eigen::Index dim) {
    return BoxDomain(Vector::Zero(dim), Vector::Ones(dim));
  }

  Eigen::Index dim() const { return lower.size(); }

  void validate() const {
    require(lower.size() == upper.size(), "BoxDomain: lower/upper dimension mismatch");
    require(lower.size() > 0, "BoxDomain: empty domain");
    for (Eigen::Index d = 0; d < lower.size(); ++d) {
      require(std::isfinite(lower[d]) && std::isfinite(upper[d]),
              "BoxDomain: non-finite bound in dimension " + std::to_string(d));
      require(lower[d] < upper[d], "BoxDomain: lower >= upper in dimension " + std::to_string(d));
    }
  }

  Vector width() const { return upper - lower; }

  Vector to_unit(const Vector& x) const {
    require(x.size() == dim(), "BoxDomain::to_unit: dimension mismatch");
    return ((x - lower).array() / width().array()).matrix();
  }

  Vector from_unit(const Vector& u) const {
    require(u.size() == dim(), "BoxDomain::from_unit: dimension mismatch");
    return lower + (u.array() * width().array()).matrix();
  }

  bool contains(const Vector& x, double tol = 0.0) const {
    if (x.size() != dim()) return false;
    for (Eigen::Index d = 0; d < dim(); ++d) {
      if (!(x[d] >= lower[d] - tol && x[d] <= upper[d] + tol)) return false;
    }
    return true;
  }

  double diagonal() const { return width().norm(); }
};

inline Vector clamp_unit(Vector u) {
  for (Eigen::Index d = 0; d < u.size(); ++d) u[d] = std::min(1.0, std::max(0.0, u[d]));
  return u;
}

/// splitmix64 finalizer; used to derive independent sub-seeds from a run seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  auto step = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return step(step(step(seed) ^ a) ^ (b * 0x632be59bd9b4e019ULL));
}

inline std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

inline Vector from_std(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace cobo

#endif  // COBO_COMMON_HPP
