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
#include <string_view>
#include <vector>

#include "attnswitch/switches.hpp"
#include "attnswitch/trace.hpp"
#include "attnswitch/visualizer.hpp"

namespace attnswitch::cli {

// One line of `attnswitch analyze` output. The record carries enough to
// render the conversation again without re-running the analysis.
struct AnalysisRecord {
  std::string id;
  VisualizationResult result;
  std::optional<std::vector<std::string>> turns;
};

std::string format_analysis(const AttentionTrace& trace,
                            const AnalysisConfig& config,
                            const SwitchReport& report,
                            const VisualizationResult& result);

// A line that parses as JSON and has a "source" key is an analysis record;
// anything else is treated as a corpus record.
bool is_analysis_line(std::string_view line);

// Throws ParseError naming the line on malformed input.
AnalysisRecord parse_analysis(std::string_view line, std::size_t line_no);

}  // namespace attnswitch::cli
