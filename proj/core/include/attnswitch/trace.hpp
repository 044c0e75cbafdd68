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
#include <optional>
#include <string>
#include <vector>

namespace attnswitch {

// Tolerance on the sum of a normalized weight vector. Exported softmax
// outputs carry float rounding, so exact equality with 1 is not required.
inline constexpr double kWeightSumTolerance = 1e-6;

/**
 * Attention state after the first `step_index` turns of a conversation have
 * been scored. Both representations are kept: uniformity is judged on the
 * normalized weights, change detection runs on the raw logits.
 */
struct StepRecord {
  std::size_t step_index = 0;
  std::vector<double> weights;
  std::vector<double> logits;

  bool operator==(const StepRecord&) const = default;
};

/**
 * The triangular series of step records for one conversation: step k holds
 * k weights and k logits. Turn and step indices are 1-based throughout the
 * public API.
 */
struct AttentionTrace {
  std::string id;
  std::vector<StepRecord> steps;
  std::optional<std::vector<std::string>> turn_texts;
  bool escalated = false;
  std::optional<std::size_t> escalation_turn;

  std::size_t turn_count() const noexcept { return steps.size(); }

  // 1-based access; throws std::out_of_range.
  const StepRecord& step(std::size_t k) const { return steps.at(k - 1); }

  // Step at which sequential analysis halted: the escalation turn when one
  // is recorded, otherwise the final step.
  std::size_t stop_step() const noexcept;

  bool operator==(const AttentionTrace&) const = default;
};

enum class LastTurnPolicy {
  // gamma of the final turn is false and its mean variation is 0.
  kZero,
};

struct AnalysisConfig {
  double tau_a = 0.18;
  double tau_c = 0.095;
  double tau_v = 0.124;
  LastTurnPolicy last_turn_variation = LastTurnPolicy::kZero;

  // Throws std::invalid_argument unless tau_a >= 0, tau_c > 0, tau_v > 0.
  void validate() const;
};

struct Violation {
  std::size_t step = 0;  // 0 for trace-level violations
  std::string field;
  std::string message;
};

struct ValidationResult {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
};

// Checks every structural invariant of a trace and reports all violations
// rather than stopping at the first one.
ValidationResult validate_trace(const AttentionTrace& trace);

}  // namespace attnswitch
