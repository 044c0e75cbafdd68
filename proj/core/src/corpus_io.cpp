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

#include "attnswitch/corpus_io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "json.hpp"

namespace attnswitch {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(std::size_t line_no, const std::string& msg) {
  throw ParseError("line " + std::to_string(line_no) + ": " + msg, line_no);
}

const json& require(const json& obj, const char* key, std::size_t line_no) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    fail(line_no, std::string("missing required field \"") + key + "\"");
  }
  return *it;
}

std::vector<std::vector<double>> read_triangle(const json& value,
                                               const char* key,
                                               std::size_t line_no) {
  if (!value.is_array()) {
    fail(line_no, std::string("field \"") + key + "\" must be an array");
  }
  std::vector<std::vector<double>> rows;
  rows.reserve(value.size());
  for (const auto& row : value) {
    if (!row.is_array()) {
      fail(line_no,
           std::string("field \"") + key + "\" must be an array of arrays");
    }
    std::vector<double>& out = rows.emplace_back();
    out.reserve(row.size());
    for (const auto& v : row) {
      if (!v.is_number()) {
        fail(line_no,
             std::string("field \"") + key + "\" contains a non-number");
      }
      out.push_back(v.get<double>());
    }
  }
  return rows;
}

bool blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  });
}

}  // namespace

AttentionTrace parse_trace(std::string_view line, std::size_t line_no) {
  json obj;
  try {
    obj = json::parse(line.begin(), line.end());
  } catch (const json::parse_error& e) {
    fail(line_no, std::string("malformed record: ") + e.what());
  }
  if (!obj.is_object()) fail(line_no, "record must be a JSON object");

  AttentionTrace trace;

  const json& id = require(obj, "id", line_no);
  if (!id.is_string()) fail(line_no, "field \"id\" must be a string");
  trace.id = id.get<std::string>();

  auto weights = read_triangle(require(obj, "weights", line_no), "weights",
                               line_no);
  auto logits = read_triangle(require(obj, "logits", line_no), "logits",
                              line_no);

  const json& escalated = require(obj, "escalated", line_no);
  if (!escalated.is_boolean()) {
    fail(line_no, "field \"escalated\" must be a boolean");
  }
  trace.escalated = escalated.get<bool>();

  if (auto it = obj.find("escalation_turn"); it != obj.end() && !it->is_null()) {
    if (!it->is_number_integer() || it->get<std::int64_t>() < 0) {
      fail(line_no, "field \"escalation_turn\" must be a non-negative integer");
    }
    trace.escalation_turn = it->get<std::size_t>();
  }

  if (auto it = obj.find("turns"); it != obj.end() && !it->is_null()) {
    if (!it->is_array()) fail(line_no, "field \"turns\" must be an array");
    std::vector<std::string> texts;
    texts.reserve(it->size());
    for (const auto& t : *it) {
      if (!t.is_string()) fail(line_no, "field \"turns\" must hold strings");
      texts.push_back(t.get<std::string>());
    }
    trace.turn_texts = std::move(texts);
  }

  // Shape problems are left for validate_trace to report; a missing logit
  // row simply becomes an empty row.
  const std::size_t n = std::max(weights.size(), logits.size());
  trace.steps.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    StepRecord& rec = trace.steps[k];
    rec.step_index = k + 1;
    if (k < weights.size()) rec.weights = std::move(weights[k]);
    if (k < logits.size()) rec.logits = std::move(logits[k]);
  }
  return trace;
}

std::string format_trace(const AttentionTrace& trace) {
  json obj;
  obj["id"] = trace.id;
  if (trace.turn_texts) obj["turns"] = *trace.turn_texts;
  json weights = json::array();
  json logits = json::array();
  for (const auto& rec : trace.steps) {
    weights.push_back(rec.weights);
    logits.push_back(rec.logits);
  }
  obj["weights"] = std::move(weights);
  obj["logits"] = std::move(logits);
  obj["escalated"] = trace.escalated;
  if (trace.escalation_turn) obj["escalation_turn"] = *trace.escalation_turn;
  return obj.dump();
}

std::vector<AttentionTrace> read_corpus(std::istream& in) {
  std::vector<AttentionTrace> traces;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    AttentionTrace trace = parse_trace(line, line_no);
    ValidationResult v = validate_trace(trace);
    if (!v.ok()) {
      std::string msg = "line " + std::to_string(line_no) + ": invalid trace";
      if (!trace.id.empty()) msg += " \"" + trace.id + "\"";
      for (const auto& violation : v.violations) {
        msg += "; " + violation.message;
      }
      throw ValidationError(msg, line_no, std::move(v.violations));
    }
    traces.push_back(std::move(trace));
  }
  if (in.bad()) throw IoError("read failure after line " + std::to_string(line_no));
  return traces;
}

std::vector<AttentionTrace> load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  return read_corpus(in);
}

void write_corpus(std::span<const AttentionTrace> traces, std::ostream& out) {
  for (const auto& trace : traces) out << format_trace(trace) << '\n';
}

void save_corpus(std::span<const AttentionTrace> traces,
                 const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_corpus(traces, out);
  out.flush();
  if (!out) throw IoError("write failure on " + path.string());
}

}  // namespace attnswitch
