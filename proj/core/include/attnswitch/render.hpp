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

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "attnswitch/trace.hpp"
#include "attnswitch/visualizer.hpp"

namespace attnswitch {

enum class RenderMode {
  kTerminal,
  kHtml,
};

struct RenderOptions {
  RenderMode mode = RenderMode::kTerminal;
  bool color = true;  // terminal only; false emits plain text
};

class MissingTextError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Shades used for switch-method intensities 1/3, 2/3 and 1. Intensity 0 is
// never colored.
inline constexpr int kSwitchAnsiShades[3] = {189, 105, 21};
inline constexpr const char* kSwitchHtmlShades[3] = {"#c6dbef", "#6baed6",
                                                     "#2171b5"};
// Model-attention intensities are quantized onto this blue ramp
// (xterm-256 cube, light to dark).
inline constexpr int kModelAnsiRamp[5] = {189, 147, 105, 63, 21};

/**
 * Renders a visualization as text. Output is a pure function of the
 * arguments and byte-deterministic. Intensities are printed as given; the
 * renderer never recomputes them.
 *
 * Throws MissingTextError when the trace has no turn texts, and
 * std::invalid_argument when the text and intensity counts differ.
 */
std::string render(const VisualizationResult& result,
                   const AttentionTrace& trace, const RenderOptions& options);

std::string render(const VisualizationResult& result, std::string_view id,
                   std::span<const std::string> turn_texts,
                   const RenderOptions& options);

}  // namespace attnswitch
