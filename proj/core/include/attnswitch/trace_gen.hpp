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
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "attnswitch/trace.hpp"

namespace attnswitch {

/**
 * Portable pseudorandom source. The engine is std::mt19937_64, whose output
 * sequence is fixed by the C++ standard; the conversions below are written
 * out by hand instead of using <random> distributions, whose algorithms are
 * implementation-defined. A seed therefore yields the same corpus on every
 * conforming toolchain.
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Top 53 bits scaled into [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform integer in [0, n) by rejection; n > 0.
  std::uint64_t below(std::uint64_t n);
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

enum class Scenario {
  kUniformStop,  // stop-point alpha <= 0.18, at least one switch event
  kSpikyStop,    // stop-point alpha > 0.18
  kSwitchRich,   // every trace has all three kinds of switch
  kConstant,     // no switch of any kind
};

std::string_view to_string(Scenario scenario) noexcept;
std::optional<Scenario> parse_scenario(std::string_view name) noexcept;

class InfeasibleSpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GenSpec {
  std::uint64_t seed = 0;
  std::size_t n_conversations = 100;
  Scenario scenario = Scenario::kUniformStop;
  double escalation_rate = 0.5;
  std::size_t min_turns = 1;
  std::size_t max_turns = 43;
};

/**
 * Draws a conversation length from a fixed turn-count shape (min 1, Q1 1,
 * median 3, Q3 4, 95th percentile 8, mean about 3.38, tail capped at 43),
 * restricted to [min_turns, max_turns]. Uses exactly one draw from rng.
 */
std::size_t sample_turn_count(Rng& rng, std::size_t min_turns,
                              std::size_t max_turns);

/**
 * Deterministic synthetic corpus. Scenarios that need switch events
 * (uniform_stop, spiky_stop, switch_rich) raise min_turns to 2. Escalated
 * conversations escalate on their final turn.
 *
 * Throws InfeasibleSpecError when the scenario cannot be met within
 * [min_turns, max_turns] or the spec is otherwise invalid.
 */
std::vector<AttentionTrace> generate_corpus(const GenSpec& spec);

inline constexpr double kDefaultRecencyBonus = 0.25;

/**
 * Toy stand-in for a trained attention model. At step i, turn j <= i scores
 * the largest keyword weight among its words (0 when none match); the newest
 * turn (j == i) gets `recency_bonus` on top when it matched a keyword.
 * Weights are the softmax of the scores. Matching is case-insensitive on
 * alphanumeric words.
 *
 * Throws std::invalid_argument on an empty turn list.
 */
AttentionTrace toy_attention_trace(
    std::span<const std::string> turns,
    const std::map<std::string, double, std::less<>>& keyword_weights,
    double recency_bonus = kDefaultRecencyBonus);

}  // namespace attnswitch
