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

#ifndef COBO_BATCH_HPP
#define COBO_BATCH_HPP

#include "cobo/acquisition.hpp"
#include "cobo/penalizer.hpp"

namespace cobo {

/// Candidates selected in one outer iteration, in selection order.
struct Batch {
  std::vector<InputPoint> elements;
  int iteration_index = 0;
  PenalizerParams params;
  /// True when some element came from the max-variance fallback because the
  /// (penalized) EI surface was identically zero.
  bool degenerate = false;
  std::vector<bool> element_degenerate;
};

/// Sub-seed used for the k-th element; element 0 uses the caller's seed so a
/// one-element batch reproduces a plain acquisition search.
inline std::uint64_t batch_element_seed(std::uint64_t seed, int k) {
  return k == 0 ? seed : mix_seed(seed, 0xba7c4u, static_cast<std::uint64_t>(k));
}

/// Greedy local-penalization batch: element 1 maximizes g(EI), element k
/// maximizes g(EI) times the penalizers of elements 1..k-1, all against the
/// same pre-batch model.
inline Batch select_batch(const GpModel& model, const BoxDomain& domain, int n_b, const SearchConfig& cfg,
                          const LipschitzConfig& lipschitz_cfg = {}) {
  require(n_b >= 1, "select_batch: batch size must be >= 1");
  require(domain.dim() == model.dim(), "select_batch: domain dimension mismatch");

  Batch batch;
  AcquisitionSurface surface(model, domain);
  if (n_b > 1) {
    batch.params = estimate_penalizer_params(model, domain, lipschitz_cfg);
  } else {
    batch.params.reward_max = model.dataset().max_reward();
  }
  surface.set_penalizer_params(batch.params);

  for (int k = 0; k < n_b; ++k) {
    SearchConfig element_cfg = cfg;
    element_cfg.seed = batch_element_seed(cfg.seed, k);
    surface.set_mode(SurfaceMode::kExpectedImprovement);
    SearchResult r = maximize_acquisition_detailed(surface, domain, element_cfg);
    bool fallback = false;
    if (!(r.ei > 0.0)) {
      surface.set_mode(SurfaceMode::kVariance);
      r = maximize_acquisition_detailed(surface, domain, element_cfg);
      fallback = true;
    }
    batch.degenerate = batch.degenerate || fallback;
    batch.element_degenerate.push_back(fallback);
    batch.elements.push_back(r.point);
    surface.add_center(r.point);
  }
  return batch;
}

}  // namespace cobo

#endif  // COBO_BATCH_HPP
