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

#include "analysis_record.hpp"

#include "attnswitch/corpus_io.hpp"
#include "json.hpp"

namespace attnswitch::cli {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(std::size_t line_no, const std::string& msg) {
  throw ParseError("line " + std::to_string(line_no) + ": " + msg, line_no);
}

}  // namespace

std::string format_analysis(const AttentionTrace& trace,
                            const AnalysisConfig& config,
                            const SwitchReport& report,
                            const VisualizationResult& result) {
  json j;
  j["id"] = trace.id;
  j["n_turns"] = trace.turn_count();
  j["stop_step"] = trace.stop_step();
  j["stop_alpha"] = result.stop_alpha;
  j["tau_uniform"] = result.stop_alpha <= config.tau_a;
  j["source"] = std::string(to_string(result.source));
  j["intensities"] = result.per_turn;
  j["config"] = {{"tau_a", config.tau_a},
                 {"tau_c", config.tau_c},
                 {"tau_v", config.tau_v}};

  json visuals = json::array();
  for (const auto& v : turn_visuals(report, trace)) {
    visuals.push_back({{"turn", v.turn},
                       {"mu", int{v.mu}},
                       {"beta", int{v.beta}},
                       {"gamma", int{v.gamma}},
                       {"intensity", v.intensity}});
  }
  j["switch_visuals"] = std::move(visuals);

  json attention = json::array();
  for (const auto& e : report.attention_events) {
    attention.push_back(
        {{"step", e.at_step}, {"direction", std::string(to_string(e.direction))}});
  }
  j["attention_events"] = std::move(attention);

  json context = json::array();
  for (const auto& e : report.context_events) {
    context.push_back({{"turn", e.affected_turn},
                       {"step", e.caused_by_step},
                       {"delta", e.delta}});
  }
  j["context_events"] = std::move(context);

  j["variation_flags"] = report.variation_flags;
  j["mean_variations"] = report.mean_variations;
  if (trace.turn_texts) j["turns"] = *trace.turn_texts;
  return j.dump();
}

bool is_analysis_line(std::string_view line) {
  const json j = json::parse(line.begin(), line.end(), nullptr, false);
  return j.is_object() && j.contains("source");
}

AnalysisRecord parse_analysis(std::string_view line, std::size_t line_no) {
  const json j = json::parse(line.begin(), line.end(), nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    fail(line_no, "malformed analysis record");
  }

  AnalysisRecord rec;
  try {
    rec.id = j.at("id").get<std::string>();
    const auto source = j.at("source").get<std::string>();
    if (source == to_string(VisualSource::kSwitchMethod)) {
      rec.result.source = VisualSource::kSwitchMethod;
    } else if (source == to_string(VisualSource::kModelAttention)) {
      rec.result.source = VisualSource::kModelAttention;
    } else {
      fail(line_no, "unknown visualization source \"" + source + "\"");
    }
    rec.result.per_turn = j.at("intensities").get<std::vector<double>>();
    rec.result.stop_alpha = j.at("stop_alpha").get<double>();
    if (j.contains("turns")) {
      rec.turns = j.at("turns").get<std::vector<std::string>>();
    }
  } catch (const json::exception& e) {
    fail(line_no, std::string("bad analysis record: ") + e.what());
  }
  return rec;
}

}  // namespace attnswitch::cli
