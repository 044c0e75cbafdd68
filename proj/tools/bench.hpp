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

#include "attnswitch/trace.hpp"

namespace attnswitch::cli {

// Per-conversation latency of the visualization pipeline.
struct BenchResult {
  std::size_t n_conversations = 0;  // conversations x repetitions
  double mean_latency_us = 0.0;
  double p95_latency_us = 0.0;
  std::size_t max_turns = 0;
};

/**
 * Times analyze + visualization selection + terminal rendering for each
 * conversation, `repetitions` times over the corpus. Loading is not timed.
 * Conversations without texts are rendered with empty lines.
 *
 * Throws std::invalid_argument on an empty corpus or zero repetitions.
 */
BenchResult run_bench(std::span<const AttentionTrace> corpus,
                      const AnalysisConfig& config, std::size_t repetitions);

std::string bench_to_json(const BenchResult& result);

}  // namespace attnswitch::cli
