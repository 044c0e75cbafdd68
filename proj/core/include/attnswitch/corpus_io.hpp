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

#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "attnswitch/trace.hpp"

namespace attnswitch {

// Base for all corpus ingestion failures. line() is 1-based, 0 when the
// failure is not tied to a line.
class CorpusError : public std::runtime_error {
 public:
  CorpusError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ParseError : public CorpusError {
 public:
  using CorpusError::CorpusError;
};

class ValidationError : public CorpusError {
 public:
  ValidationError(const std::string& what, std::size_t line,
                  std::vector<Violation> violations)
      : CorpusError(what, line), violations_(std::move(violations)) {}

  const std::vector<Violation>& violations() const noexcept {
    return violations_;
  }

 private:
  std::vector<Violation> violations_;
};

class IoError : public CorpusError {
 public:
  explicit IoError(const std::string& what) : CorpusError(what, 0) {}
};

/**
 * Corpus files are UTF-8, one JSON object per line:
 *
 *   {"id": "...", "turns": [...], "weights": [[..], [.., ..], ...],
 *    "logits": [...same shape...], "escalated": bool, "escalation_turn": k}
 *
 * "turns" and "escalation_turn" are optional. Blank lines are skipped.
 * parse_trace only checks field presence and types; triangular shape and
 * normalization are validate_trace's job.
 */
AttentionTrace parse_trace(std::string_view line, std::size_t line_no);

// One record, no trailing newline. Reals are written with round-trip
// precision.
std::string format_trace(const AttentionTrace& trace);

// Reads and validates every record; throws ParseError or ValidationError
// naming the offending line.
std::vector<AttentionTrace> read_corpus(std::istream& in);
std::vector<AttentionTrace> load_corpus(const std::filesystem::path& path);

void write_corpus(std::span<const AttentionTrace> traces, std::ostream& out);
// Throws IoError when the file cannot be written.
void save_corpus(std::span<const AttentionTrace> traces,
                 const std::filesystem::path& path);

}  // namespace attnswitch
