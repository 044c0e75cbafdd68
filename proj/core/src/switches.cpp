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

#include "attnswitch/switches.hpp"

#include <cmath>

#include "attnswitch/uniformity.hpp"

namespace attnswitch {

std::string_view to_string(Direction direction) noexcept {
  switch (direction) {
    case Direction::kUniformToNonuniform:
      return "uniform_to_nonuniform";
    case Direction::kNonuniformToUniform:
      return "nonuniform_to_uniform";
  }
  return "unknown";
}

std::vector<AttentionDependencyEvent> detect_attention_switches(
    const AttentionTrace& trace, double tau_a) {
  std::vector<AttentionDependencyEvent> events;
  const std::size_t n = trace.turn_count();
  if (n == 0) return events;

  // A prefix is uniform when alpha <= tau_a; tau_a may exceed N - 1 for
  // short prefixes, which simply makes them uniform.
  bool prev_uniform = measure_uniformity(trace.step(1).weights).alpha <= tau_a;
  for (std::size_t k = 2; k <= n; ++k) {
    const bool uniform = measure_uniformity(trace.step(k).weights).alpha <= tau_a;
    if (uniform != prev_uniform) {
      events.push_back({k, uniform ? Direction::kNonuniformToUniform
                                   : Direction::kUniformToNonuniform});
    }
    prev_uniform = uniform;
  }
  return events;
}

std::vector<ContextDependencyEvent> detect_context_switches(
    const AttentionTrace& trace, double tau_c) {
  std::vector<ContextDependencyEvent> events;
  const std::size_t n = trace.turn_count();
  for (std::size_t step = 2; step <= n; ++step) {
    const auto& before = trace.step(step - 1).logits;
    const auto& after = trace.step(step).logits;
    for (std::size_t j = 0; j + 1 < step; ++j) {
      const double delta = std::abs(after[j] - before[j]);
      if (delta >= tau_c) events.push_back({j + 1, step, delta});
    }
  }
  return events;
}

VariationResult detect_variation_flags(const AttentionTrace& trace,
                                       double tau_v, LastTurnPolicy policy) {
  const std::size_t n = trace.turn_count();
  VariationResult out;
  out.means.assign(n, 0.0);
  out.flags.assign(n, false);

  // Turn t (1-based) is present from step t on; sum its consecutive
  // logit changes over steps t..N.
  for (std::size_t t = 1; t < n; ++t) {
    double total = 0.0;
    for (std::size_t k = t; k < n; ++k) {
      total += std::abs(trace.step(k).logits[t - 1] -
                        trace.step(k + 1).logits[t - 1]);
    }
    out.means[t - 1] = total / static_cast<double>(n - t);
    out.flags[t - 1] = out.means[t - 1] >= tau_v;
  }

  switch (policy) {
    case LastTurnPolicy::kZero:
      if (n > 0) {
        out.means[n - 1] = 0.0;
        out.flags[n - 1] = false;
      }
      break;
  }
  return out;
}

SwitchReport analyze(const AttentionTrace& trace, const AnalysisConfig& config) {
  SwitchReport report;
  report.attention_events = detect_attention_switches(trace, config.tau_a);
  report.context_events = detect_context_switches(trace, config.tau_c);
  VariationResult variation =
      detect_variation_flags(trace, config.tau_v, config.last_turn_variation);
  report.variation_flags = std::move(variation.flags);
  report.mean_variations = std::move(variation.means);
  return report;
}

}  // namespace attnswitch
