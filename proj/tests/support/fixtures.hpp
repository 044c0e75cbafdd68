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

// Hand-built conversations and random generators shared by the test suites.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "attnswitch/trace.hpp"

namespace attnswitch::testing {

inline std::vector<double> uniform_row(std::size_t n) {
  return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

// Builds a trace from per-step weights; logits default to all zeros.
inline AttentionTrace make_trace(std::vector<std::vector<double>> weights,
                                 std::vector<std::vector<double>> logits = {}) {
  AttentionTrace t;
  t.id = "fixture";
  for (std::size_t k = 0; k < weights.size(); ++k) {
    StepRecord s;
    s.step_index = k + 1;
    s.weights = std::move(weights[k]);
    s.logits = k < logits.size() ? std::move(logits[k])
                                 : std::vector<double>(k + 1, 0.0);
    t.steps.push_back(std::move(s));
  }
  return t;
}

// Sets logits so that turn j's value becomes `value` from step `from_step`
// onward (all earlier steps keep their current value).
inline void shift_logit(AttentionTrace& t, std::size_t turn,
                        std::size_t from_step, double delta) {
  for (std::size_t k = from_step; k <= t.steps.size(); ++k) {
    t.steps[k - 1].logits[turn - 1] += delta;
  }
}

// Six turns: attention stays uniform for three steps, goes spiky for two,
// returns to uniform at the stop point. Turns 2-5 are later re-weighted.
// Expected intensities: 0, 1/3, 1/3, 1, 2/3, 1/3.
inline AttentionTrace switch_table_trace() {
  AttentionTrace t = make_trace({
      {1.0},
      uniform_row(2),
      uniform_row(3),
      {0.1, 0.1, 0.1, 0.7},
      {0.1, 0.1, 0.1, 0.5, 0.2},
      uniform_row(6),
  });
  shift_logit(t, 2, 3, 0.1);
  shift_logit(t, 3, 4, 0.1);
  shift_logit(t, 4, 5, 0.3);
  shift_logit(t, 5, 6, 0.2);
  t.id = "reservation-status";
  t.turn_texts = std::vector<std::string>{
      "existing reservation",
      "status",
      "status of my reservation",
      "whats the status of reservation # ggkk98",
      "view, assign or change seats",
      "ggkk98",
  };
  t.escalated = true;
  t.escalation_turn = 6;
  return t;
}

// Seven turns with mixed causes. Expected intensities:
// 0, 2/3, 2/3, 1/3, 1/3, 2/3, 1/3.
inline AttentionTrace mixed_causes_trace() {
  AttentionTrace t = make_trace({
      {1.0},
      {0.1, 0.9},
      uniform_row(3),
      uniform_row(4),
      uniform_row(5),
      {0.05, 0.05, 0.05, 0.05, 0.05, 0.75},
      uniform_row(7),
  });
  for (std::size_t j = 2; j <= 6; ++j) shift_logit(t, j, j + 1, 0.1);
  t.id = "kennel";
  t.turn_texts = std::vector<std::string>{
      "petsafe",
      "contact live animal desk",
      "petsafe",
      "pit bull kennels # ggkk98",
      "kennel requirements",
      "live animal embargos",
      "purchasing an in-cabin kennel",
  };
  t.escalated = true;
  t.escalation_turn = 7;
  return t;
}

// Random probability vector of length n. Mixes exact uniform rows, smooth
// rows, rows with zeros and near one-hot rows.
inline std::vector<double> random_probs(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int k = kind(rng);
  if (k == 0) return uniform_row(n);
  std::vector<double> w(n);
  double sum = 0.0;
  for (auto& x : w) {
    double v = -std::log(1.0 - u(rng));
    if (k == 2 && u(rng) < 0.3) v = 0.0;
    if (k == 3) v = v * v * v * v;
    x = v;
    sum += v;
  }
  if (sum == 0.0) {
    w.assign(n, 0.0);
    w[0] = 1.0;
    return w;
  }
  for (auto& x : w) x /= sum;
  return w;
}

// Random valid trace with n turns. Weights alternate between uniform and
// random so all verdicts occur; logits take jumps of varied size.
inline AttentionTrace random_trace(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  AttentionTrace t;
  t.id = "random";
  std::vector<double> current;
  for (std::size_t k = 1; k <= n; ++k) {
    StepRecord s;
    s.step_index = k;
    s.weights = u(rng) < 0.4 ? uniform_row(k) : random_probs(rng, k);
    current.push_back(u(rng) * 2.0 - 1.0);
    for (std::size_t j = 0; j + 1 < k; ++j) {
      if (u(rng) < 0.3) current[j] += (u(rng) - 0.5) * 0.6;
    }
    s.logits = current;
    t.steps.push_back(std::move(s));
  }
  t.escalated = u(rng) < 0.5;
  if (t.escalated) {
    t.escalation_turn = 1 + static_cast<std::size_t>(u(rng) * n) % n;
  }
  return t;
}

}  // namespace attnswitch::testing
