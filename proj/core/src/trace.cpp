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

#include "attnswitch/trace.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace attnswitch {

namespace {

std::string fmt_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string at_step(std::size_t k) { return " at step " + std::to_string(k); }

void check_step(const StepRecord& rec, std::size_t position,
                std::vector<Violation>& out) {
  auto add = [&](const char* field, std::string msg) {
    out.push_back({position, field, std::move(msg)});
  };

  if (rec.step_index != position) {
    add("step_index", "step_index " + std::to_string(rec.step_index) +
                          " != position" + at_step(position));
  }
  if (rec.weights.size() != position || rec.logits.size() != position) {
    add(rec.weights.size() != position ? "weights" : "logits",
        "length mismatch" + at_step(position) + " (weights " +
            std::to_string(rec.weights.size()) + ", logits " +
            std::to_string(rec.logits.size()) + ", expected " +
            std::to_string(position) + ")");
  }

  double sum = 0.0;
  bool finite = true;
  for (std::size_t j = 0; j < rec.weights.size(); ++j) {
    const double w = rec.weights[j];
    if (!std::isfinite(w)) {
      finite = false;
      add("weights", "non-finite weight for turn " + std::to_string(j + 1) +
                         at_step(position));
      continue;
    }
    if (w < 0.0 || w > 1.0) {
      add("weights", "weight " + fmt_real(w) + " outside [0, 1] for turn " +
                         std::to_string(j + 1) + at_step(position));
    }
    sum += w;
  }
  if (finite && !rec.weights.empty() &&
      std::abs(sum - 1.0) > kWeightSumTolerance) {
    add("weights", "weights sum " + fmt_real(sum) + " != 1" + at_step(position));
  }
  for (std::size_t j = 0; j < rec.logits.size(); ++j) {
    if (!std::isfinite(rec.logits[j])) {
      add("logits", "non-finite logit for turn " + std::to_string(j + 1) +
                        at_step(position));
    }
  }
}

}  // namespace

std::size_t AttentionTrace::stop_step() const noexcept {
  const std::size_t n = steps.size();
  if (escalation_turn && *escalation_turn >= 1 && *escalation_turn <= n) {
    return *escalation_turn;
  }
  return n;
}

void AnalysisConfig::validate() const {
  if (!(tau_a >= 0.0) || !std::isfinite(tau_a)) {
    throw std::invalid_argument("tau_a must be a finite value >= 0");
  }
  if (!(tau_c > 0.0) || !std::isfinite(tau_c)) {
    throw std::invalid_argument("tau_c must be a finite value > 0");
  }
  if (!(tau_v > 0.0) || !std::isfinite(tau_v)) {
    throw std::invalid_argument("tau_v must be a finite value > 0");
  }
}

ValidationResult validate_trace(const AttentionTrace& trace) {
  ValidationResult result;
  auto& out = result.violations;
  const std::size_t n = trace.steps.size();

  if (n == 0) {
    out.push_back({0, "steps", "trace has no steps"});
  }
  for (std::size_t k = 0; k < n; ++k) check_step(trace.steps[k], k + 1, out);

  if (trace.turn_texts && trace.turn_texts->size() != n) {
    out.push_back({0, "turns",
                   "turn text count " +
                       std::to_string(trace.turn_texts->size()) +
                       " != step count " + std::to_string(n)});
  }
  if (trace.escalation_turn) {
    if (!trace.escalated) {
      out.push_back(
          {0, "escalation_turn", "escalation_turn set on a non-escalated trace"});
    }
    const std::size_t t = *trace.escalation_turn;
    if (t < 1 || t > n) {
      out.push_back({0, "escalation_turn",
                     "escalation_turn " + std::to_string(t) +
                         " outside [1, " + std::to_string(n) + "]"});
    }
  }
  return result;
}

}  // namespace attnswitch
