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

#ifndef COBO_LOWDISCREPANCY_HPP
#define COBO_LOWDISCREPANCY_HPP

#include <array>
#include <random>

#include "cobo/common.hpp"

namespace cobo {

/// Radical inverse of `index` in base `base`.
inline double radical_inverse(std::uint64_t index, unsigned base) {
  const double inv_base = 1.0 / base;
  double inv = inv_base;
  double result = 0.0;
  while (index > 0) {
    result += static_cast<double>(index % base) * inv;
    index /= base;
    inv *= inv_base;
  }
  return result;
}

/// Halton sequence in the unit box with a Cranley-Patterson rotation drawn
/// from `seed`. Seed 0 gives the unrotated sequence. Index 0 is skipped so
/// the unrotated sequence never returns the origin.
class HaltonSequence {
 public:
  static constexpr std::array<unsigned, 16> kPrimes = {2,  3,  5,  7,  11, 13, 17, 19,
                                                       23, 29, 31, 37, 41, 43, 47, 53};

  HaltonSequence(Eigen::Index dim, std::uint64_t seed) : shift_(Vector::Zero(dim)) {
    require(dim >= 1 && dim <= static_cast<Eigen::Index>(kPrimes.size()),
            "HaltonSequence: dimension must be in [1, 16]");
    if (seed != 0) {
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> unif(0.0, 1.0);
      for (Eigen::Index d = 0; d < dim; ++d) shift_[d] = unif(rng);
    }
  }

  Eigen::Index dim() const { return shift_.size(); }

  Vector operator()(std::uint64_t index) const {
    Vector u(dim());
    for (Eigen::Index d = 0; d < dim(); ++d) {
      double v = radical_inverse(index + 1, kPrimes[static_cast<std::size_t>(d)]) + shift_[d];
      u[d] = v - std::floor(v);
    }
    return u;
  }

  /// First `n` points as columns.
  Matrix take(std::size_t n) const {
    Matrix pts(dim(), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) pts.col(static_cast<Eigen::Index>(i)) = (*this)(i);
    return pts;
  }

 private:
  Vector shift_;
};

}  // namespace cobo

#endif  // COBO_LOWDISCREPANCY_HPP
