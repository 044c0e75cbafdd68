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

#include "attnswitch/switches.hpp"
#include "attnswitch/trace.hpp"

namespace attnswitch {

/**
 * Per-turn switch indicators and the resulting color intensity.
 *
 *   mu    - an attention dependency switch happened when this turn was added
 *   beta  - some later turn moved this turn's logit by >= tau_c
 *   gamma - this turn's mean logit variation met tau_v
 *
 * intensity = (mu + beta + gamma) / 3, one of {0, 1/3, 2/3, 1}.
 */
struct TurnVisual {
  std::size_t turn = 0;
  bool mu = false;
  bool beta = false;
  bool gamma = false;
  double intensity = 0.0;

  bool operator==(const TurnVisual&) const = default;
};

enum class VisualSource {
  kModelAttention,
  kSwitchMethod,
};

std::string_view to_string(VisualSource source) noexcept;

struct VisualizationResult {
  VisualSource source = VisualSource::kModelAttention;
  std::vector<double> per_turn;  // one intensity per turn, 0-based
  double stop_alpha = 0.0;

  bool operator==(const VisualizationResult&) const = default;
};

// Throws std::invalid_argument when the report does not describe a trace of
// the same length.
std::vector<TurnVisual> turn_visuals(const SwitchReport& report,
                                     const AttentionTrace& trace);

/**
 * Falls back to switch-based intensities when the stop-point attention is
 * tau_a-uniform; otherwise passes the stop-point weights through. Turns
 * after an early escalation get model intensity 0.
 */
VisualizationResult select_visualization(const AttentionTrace& trace,
                                         const AnalysisConfig& config);

// Same, reusing a report already computed for `trace` with `config`.
VisualizationResult select_visualization(const AttentionTrace& trace,
                                         const AnalysisConfig& config,
                                         const SwitchReport& report);

}  // namespace attnswitch
