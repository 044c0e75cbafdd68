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

#include "attnswitch/visualizer.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "attnswitch/uniformity.hpp"

namespace attnswitch {

namespace {

VisualizationResult model_attention(const AttentionTrace& trace,
                                    double stop_alpha) {
  VisualizationResult result;
  result.source = VisualSource::kModelAttention;
  result.stop_alpha = stop_alpha;
  result.per_turn.assign(trace.turn_count(), 0.0);
  const auto& w = trace.step(trace.stop_step()).weights;
  std::copy(w.begin(), w.end(), result.per_turn.begin());
  return result;
}

}  // namespace

std::string_view to_string(VisualSource source) noexcept {
  switch (source) {
    case VisualSource::kModelAttention:
      return "model_attention";
    case VisualSource::kSwitchMethod:
      return "switch_method";
  }
  return "unknown";
}

std::vector<TurnVisual> turn_visuals(const SwitchReport& report,
                                     const AttentionTrace& trace) {
  const std::size_t n = trace.turn_count();
  if (report.variation_flags.size() != n) {
    throw std::invalid_argument(
        "report covers " + std::to_string(report.variation_flags.size()) +
        " turns but trace has " + std::to_string(n));
  }

  std::vector<TurnVisual> visuals(n);
  for (std::size_t t = 0; t < n; ++t) {
    visuals[t].turn = t + 1;
    visuals[t].gamma = report.variation_flags[t];
  }
  for (const auto& e : report.attention_events) {
    if (e.at_step < 2 || e.at_step > n) {
      throw std::invalid_argument("attention event at step " +
                                  std::to_string(e.at_step) +
                                  " outside the trace");
    }
    visuals[e.at_step - 1].mu = true;
  }
  for (const auto& e : report.context_events) {
    if (e.affected_turn < 1 || e.affected_turn >= e.caused_by_step ||
        e.caused_by_step > n) {
      throw std::invalid_argument("context event outside the trace");
    }
    visuals[e.affected_turn - 1].beta = true;
  }
  for (auto& v : visuals) {
    const int count = int{v.mu} + int{v.beta} + int{v.gamma};
    v.intensity = count / 3.0;
  }
  return visuals;
}

VisualizationResult select_visualization(const AttentionTrace& trace,
                                         const AnalysisConfig& config) {
  const double stop_alpha = alpha_at_stop(trace);
  // The switch report is only needed for the fallback.
  if (stop_alpha > config.tau_a) return model_attention(trace, stop_alpha);
  return select_visualization(trace, config, analyze(trace, config));
}

VisualizationResult select_visualization(const AttentionTrace& trace,
                                         const AnalysisConfig& config,
                                         const SwitchReport& report) {
  const double stop_alpha = alpha_at_stop(trace);
  if (stop_alpha > config.tau_a) return model_attention(trace, stop_alpha);

  VisualizationResult result;
  result.source = VisualSource::kSwitchMethod;
  result.stop_alpha = stop_alpha;
  for (const auto& v : turn_visuals(report, trace)) {
    result.per_turn.push_back(v.intensity);
  }
  return result;
}

}  // namespace attnswitch
