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
#include <string>
#include <vector>

#include "attnswitch/trace.hpp"

namespace attnswitch {

/**
 * Corpus-wide switch counts and how often they line up with escalation.
 * An event "coincides" with escalation when its step equals the trace's
 * escalation turn. Single-turn conversations contribute to n_conversations
 * and n_turns only.
 *
 * context_switch_turns counts distinct (conversation, turn) pairs with at
 * least one context event; the matching coincide count is the subset where
 * at least one of those events was caused by the escalation turn.
 * variation_switch_turns counts flagged turns; the coincide count is the
 * subset whose turn index is the escalation turn.
 */
struct CorpusStats {
  std::size_t n_conversations = 0;
  std::size_t n_turns = 0;
  std::size_t context_switch_turns = 0;
  std::size_t context_coincide_escalation = 0;
  std::size_t variation_switch_turns = 0;
  std::size_t variation_coincide_escalation = 0;
  std::size_t uniform_to_nonuniform_pairs = 0;
  std::size_t nonuniform_to_uniform_pairs = 0;
  std::size_t u2n_coincide_escalation = 0;
  std::size_t n2u_coincide_escalation = 0;

  bool operator==(const CorpusStats&) const = default;
};

struct UniformityCurve {
  std::vector<double> thresholds;
  std::vector<double> fraction_uniform_model;
  std::vector<double> fraction_uniform_fallback;
};

// `workers` == 0 uses the hardware concurrency. Results do not depend on
// the worker count.
CorpusStats corpus_statistics(std::span<const AttentionTrace> corpus,
                              const AnalysisConfig& config,
                              unsigned workers = 1);

/**
 * For each threshold t: the fraction of traces whose stop-point alpha is
 * <= t, and the fraction whose final visualization (fallback applied with
 * tau_a = t) is still t-uniform once its intensities are renormalized to
 * sum to 1. All-zero intensity vectors count as uniform.
 *
 * Thresholds must be non-negative and ascending; throws
 * std::invalid_argument otherwise, or when the corpus is empty.
 */
UniformityCurve uniformity_curve(std::span<const AttentionTrace> corpus,
                                 const AnalysisConfig& config,
                                 std::span<const double> thresholds,
                                 unsigned workers = 1);

// "threshold,model_uniform_frac,fallback_uniform_frac" plus one row per
// threshold.
std::string curve_to_csv(const UniformityCurve& curve);

// One JSON object whose keys are the CorpusStats field names.
std::string stats_to_json(const CorpusStats& stats);

}  // namespace attnswitch
