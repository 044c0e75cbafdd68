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

#include "bench.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <vector>

#include "attnswitch/calibration.hpp"
#include "attnswitch/render.hpp"
#include "attnswitch/switches.hpp"
#include "attnswitch/visualizer.hpp"
#include "json.hpp"

namespace attnswitch::cli {

// Keeps the rendered output observable so the timed work is not elided.
volatile std::size_t bench_sink = 0;

BenchResult run_bench(std::span<const AttentionTrace> corpus,
                      const AnalysisConfig& config, std::size_t repetitions) {
  if (corpus.empty()) throw std::invalid_argument("bench needs a non-empty corpus");
  if (repetitions == 0) throw std::invalid_argument("bench needs repetitions >= 1");

  std::vector<std::vector<std::string>> blank_texts(corpus.size());
  BenchResult result;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    result.max_turns = std::max(result.max_turns, corpus[i].turn_count());
    if (!corpus[i].turn_texts) blank_texts[i].assign(corpus[i].turn_count(), "");
  }

  const RenderOptions options{RenderMode::kTerminal, true};
  std::vector<double> latencies_us;
  latencies_us.reserve(corpus.size() * repetitions);
  std::size_t sink = 0;
  for (std::size_t rep = 0; rep < repetitions; ++rep) {
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const AttentionTrace& trace = corpus[i];
      const auto start = std::chrono::steady_clock::now();

      const SwitchReport report = analyze(trace, config);
      const VisualizationResult vis = select_visualization(trace, config, report);
      const std::string text =
          trace.turn_texts ? render(vis, trace, options)
                           : render(vis, trace.id, blank_texts[i], options);

      const auto stop = std::chrono::steady_clock::now();
      sink += text.size();
      latencies_us.push_back(
          std::chrono::duration<double, std::micro>(stop - start).count());
    }
  }
  bench_sink = sink;

  result.n_conversations = corpus.size() * repetitions;
  double total = 0.0;
  for (double v : latencies_us) total += v;
  result.mean_latency_us = total / static_cast<double>(latencies_us.size());
  result.p95_latency_us = percentile(std::move(latencies_us), 95.0);
  return result;
}

std::string bench_to_json(const BenchResult& result) {
  nlohmann::ordered_json j;
  j["n_conversations"] = result.n_conversations;
  j["mean_latency_us"] = result.mean_latency_us;
  j["p95_latency_us"] = result.p95_latency_us;
  j["max_turns"] = result.max_turns;
  return j.dump(2) + "\n";
}

}  // namespace attnswitch::cli
