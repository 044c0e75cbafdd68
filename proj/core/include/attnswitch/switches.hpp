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
#include <string_view>
#include <vector>

#include "attnswitch/trace.hpp"

namespace attnswitch {

enum class Direction {
  kUniformToNonuniform,
  kNonuniformToUniform,
};

std::string_view to_string(Direction direction) noexcept;

// Adding turn `at_step` flipped the prefix's tau_a-uniformity verdict.
struct AttentionDependencyEvent {
  std::size_t at_step = 0;
  Direction direction = Direction::kUniformToNonuniform;

  bool operator==(const AttentionDependencyEvent&) const = default;
};

// Adding turn `caused_by_step` moved the logit of an earlier turn
// `affected_turn` by `delta` >= tau_c.
struct ContextDependencyEvent {
  std::size_t affected_turn = 0;
  std::size_t caused_by_step = 0;
  double delta = 0.0;

  bool operator==(const ContextDependencyEvent&) const = default;
};

struct VariationResult {
  std::vector<bool> flags;
  std::vector<double> means;
};

/**
 * Everything the three detectors found in one trace. Vectors indexed by
 * turn are 0-based (entry t describes turn t + 1). Events are ordered by
 * step, then by turn.
 */
struct SwitchReport {
  std::vector<AttentionDependencyEvent> attention_events;
  std::vector<ContextDependencyEvent> context_events;
  std::vector<bool> variation_flags;
  std::vector<double> mean_variations;

  bool operator==(const SwitchReport&) const = default;
};

// Runs on normalized weights. Step 1 always measures alpha == 0, so the
// earliest possible event is at step 2.
std::vector<AttentionDependencyEvent> detect_attention_switches(
    const AttentionTrace& trace, double tau_a);

// Runs on logits: one event per (j, i + 1) with j <= i and
// |logits_{i+1}[j] - logits_i[j]| >= tau_c.
std::vector<ContextDependencyEvent> detect_context_switches(
    const AttentionTrace& trace, double tau_c);

// Runs on logits. For turn i < N:
//   means[i] = 1/(N - i) * sum_{k=i}^{N-1} |logits_k[i] - logits_{k+1}[i]|
// and flags[i] = means[i] >= tau_v. The final turn follows `policy`.
VariationResult detect_variation_flags(const AttentionTrace& trace,
                                       double tau_v, LastTurnPolicy policy);

SwitchReport analyze(const AttentionTrace& trace, const AnalysisConfig& config);

}  // namespace attnswitch
