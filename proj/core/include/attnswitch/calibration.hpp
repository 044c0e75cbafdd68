/*
 * Copyright (c) The attnswitch Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "attnswitch/trace.hpp"

namespace attnswitch {

class EmptyPoolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Percentile by linear interpolation between the closest order statistics:
 * with the values sorted ascending as x_0..x_{n-1} and r = pct/100 * (n-1),
 *
 *   result = x_floor(r) + (r - floor(r)) * (x_ceil(r) - x_floor(r)).
 *
 * pct must lie in [0, 100]. Throws EmptyPoolError on an empty input.
 */
double percentile(std::vector<double> values, double pct);

struct CalibratedThresholds {
  double percentile = 75.0;
  double tau_c = 0.0;
  double tau_v = 0.0;
  std::size_t context_pool_size = 0;
  std::size_t variation_pool_size = 0;

  // Either threshold came out as 0, which no detector accepts.
  bool degenerate() const noexcept { return tau_c <= 0.0 || tau_v <= 0.0; }
};

// Pooled samples used for calibration, exposed for inspection and testing.
// context: every |logits_{i+1}[j] - logits_i[j]|, j <= i < N.
// variation: every per-turn mean variation of turns 1..N-1.
std::vector<double> context_delta_pool(std::span<const AttentionTrace> corpus);
std::vector<double> variation_mean_pool(std::span<const AttentionTrace> corpus);

// tau_c and tau_v as the given percentile of the globally pooled values.
// pct must lie strictly inside (0, 100); throws std::invalid_argument
// otherwise and EmptyPoolError when no trace has two or more steps.
CalibratedThresholds calibrate_thresholds(
    std::span<const AttentionTrace> corpus, double pct = 75.0);

}  // namespace attnswitch
