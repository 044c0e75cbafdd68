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

#include "attnswitch/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "attnswitch/switches.hpp"

namespace attnswitch {

double percentile(std::vector<double> values, double pct) {
  if (values.empty()) throw EmptyPoolError("percentile of an empty pool");
  if (!(pct >= 0.0 && pct <= 100.0)) {
    throw std::invalid_argument("percentile " + std::to_string(pct) +
                                " outside [0, 100]");
  }
  std::sort(values.begin(), values.end());
  const double rank = pct / 100.0 * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(rank));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = rank - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

std::vector<double> context_delta_pool(std::span<const AttentionTrace> corpus) {
  std::vector<double> pool;
  for (const auto& trace : corpus) {
    for (std::size_t step = 2; step <= trace.turn_count(); ++step) {
      const auto& before = trace.step(step - 1).logits;
      const auto& after = trace.step(step).logits;
      for (std::size_t j = 0; j + 1 < step; ++j) {
        pool.push_back(std::abs(after[j] - before[j]));
      }
    }
  }
  return pool;
}

std::vector<double> variation_mean_pool(
    std::span<const AttentionTrace> corpus) {
  std::vector<double> pool;
  for (const auto& trace : corpus) {
    const std::size_t n = trace.turn_count();
    if (n < 2) continue;
    // The threshold does not affect the means.
    const VariationResult v =
        detect_variation_flags(trace, 1.0, LastTurnPolicy::kZero);
    pool.insert(pool.end(), v.means.begin(), v.means.end() - 1);
  }
  return pool;
}

CalibratedThresholds calibrate_thresholds(
    std::span<const AttentionTrace> corpus, double pct) {
  if (!(pct > 0.0 && pct < 100.0)) {
    throw std::invalid_argument("calibration percentile must lie in (0, 100)");
  }
  std::vector<double> deltas = context_delta_pool(corpus);
  std::vector<double> means = variation_mean_pool(corpus);
  if (deltas.empty() || means.empty()) {
    throw EmptyPoolError(
        "no conversation with two or more turns to calibrate from");
  }

  CalibratedThresholds out;
  out.percentile = pct;
  out.context_pool_size = deltas.size();
  out.variation_pool_size = means.size();
  out.tau_c = percentile(std::move(deltas), pct);
  out.tau_v = percentile(std::move(means), pct);
  return out;
}

}  // namespace attnswitch
