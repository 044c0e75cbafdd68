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

#include "attnswitch/trace_gen.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "attnswitch/switches.hpp"
#include "attnswitch/uniformity.hpp"

namespace attnswitch {

namespace {

// Turn-count shape: explicit masses for 1..8 turns, then a geometric tail
// starting at 9 (mean tail length 10.4) truncated at 43.
constexpr std::array<double, 8> kHeadMass = {0.30, 0.15, 0.15, 0.16,
                                             0.07, 0.05, 0.04, 0.03};
constexpr double kTailContinue = 0.58333333333333333;
constexpr std::size_t kShapeMaxTurns = 43;

double turn_count_mass(std::size_t n) {
  if (n <= kHeadMass.size()) return kHeadMass[n - 1];
  double tail = 1.0;
  for (double m : kHeadMass) tail -= m;
  const double stay = std::pow(kTailContinue, static_cast<double>(n - 9));
  return n == kShapeMaxTurns ? tail * stay : tail * stay * (1.0 - kTailContinue);
}

constexpr std::array<const char*, 40> kVocabulary = {
    "reservation", "status",   "flight",   "refund",    "baggage",
    "seat",        "change",   "cancel",   "help",      "agent",
    "booking",     "number",   "check",    "upgrade",   "ticket",
    "delay",       "policy",   "kennel",   "pet",       "fee",
    "miles",       "account",  "password", "boarding",  "pass",
    "gate",        "time",     "travel",   "credit",    "voucher",
    "please",      "my",       "the",      "is",        "what",
    "how",         "can",      "i",        "need",      "representative"};

// Multiplicative jitter around 1/k that keeps alpha far below 0.18 even
// at 43 turns.
constexpr double kNearUniformJitter = 0.04;

std::vector<double> uniform_weights(std::size_t k) {
  return std::vector<double>(k, 1.0 / static_cast<double>(k));
}

std::vector<double> normalized(std::vector<double> w) {
  double sum = 0.0;
  for (double v : w) sum += v;
  for (double& v : w) v /= sum;
  return w;
}

std::vector<double> near_uniform_weights(Rng& rng, std::size_t k) {
  if (k == 1) return {1.0};
  std::vector<double> w(k);
  for (double& v : w) {
    v = 1.0 + rng.uniform(-kNearUniformJitter, kNearUniformJitter);
  }
  return normalized(std::move(w));
}

std::vector<double> spiky_weights(Rng& rng, std::size_t k) {
  if (k == 1) return {1.0};
  const std::size_t dominant = rng.below(k);
  const double mass = rng.uniform(0.8, 0.95);
  std::vector<double> w(k, (1.0 - mass) / static_cast<double>(k - 1));
  w[dominant] = mass;
  return normalized(std::move(w));
}

std::string random_text(Rng& rng) {
  const std::size_t words = 1 + rng.below(6);
  std::string text;
  for (std::size_t i = 0; i < words; ++i) {
    if (i > 0) text += ' ';
    text += kVocabulary[rng.below(kVocabulary.size())];
  }
  return text;
}

// Running logits of all turns seen so far; each step appends the new turn
// and may move earlier ones.
class LogitTrack {
 public:
  void add_turn(double base) { current_.push_back(base); }
  void shift(std::size_t turn, double delta) { current_[turn - 1] += delta; }
  const std::vector<double>& values() const { return current_; }

 private:
  std::vector<double> current_;
};

// Moves each earlier turn from `first_turn` on with probability p by a
// uniform amount in [-amp, amp].
void random_jumps(Rng& rng, LogitTrack& logits, std::size_t step, double p,
                  double amp, std::size_t first_turn = 1) {
  for (std::size_t j = first_turn; j < step; ++j) {
    if (rng.bernoulli(p)) logits.shift(j, rng.uniform(-amp, amp));
  }
}

AttentionTrace build_trace(Rng& rng, Scenario scenario, std::size_t n) {
  AttentionTrace trace;
  trace.steps.reserve(n);
  std::vector<std::string> texts;
  texts.reserve(n);
  LogitTrack logits;

  for (std::size_t step = 1; step <= n; ++step) {
    texts.push_back(random_text(rng));
    logits.add_turn(rng.uniform(-1.0, 1.0));

    StepRecord rec;
    rec.step_index = step;
    switch (scenario) {
      case Scenario::kConstant:
        rec.weights = uniform_weights(step);
        break;

      case Scenario::kSpikyStop:
        if (step >= 2) random_jumps(rng, logits, step, 0.2, 0.3);
        rec.weights = (step == n || rng.bernoulli(0.5))
                          ? spiky_weights(rng, step)
                          : near_uniform_weights(rng, step);
        break;

      case Scenario::kUniformStop:
        if (step == 2) {
          // Guarantees a context switch on turn 1.
          const double jump = rng.uniform(0.2, 0.4);
          logits.shift(1, rng.bernoulli(0.5) ? jump : -jump);
        } else if (step > 2) {
          random_jumps(rng, logits, step, 0.15, 0.3);
        }
        // The last two steps stay near-uniform so the final turn never
        // carries an attention switch.
        rec.weights = (step >= 2 && step + 1 < n && rng.bernoulli(0.4))
                          ? spiky_weights(rng, step)
                          : near_uniform_weights(rng, step);
        break;

      case Scenario::kSwitchRich:
        if (step >= 2) {
          random_jumps(rng, logits, step, 0.2, 0.3, 2);
          // Turn 1 oscillates by 0.3 every step: a context switch at every
          // step and a mean variation of 0.3.
          logits.shift(1, step % 2 == 0 ? 0.3 : -0.3);
        }
        if (step == 1) {
          rec.weights = {1.0};
        } else if (step == 2) {
          rec.weights = spiky_weights(rng, step);
        } else {
          rec.weights = rng.bernoulli(0.5) ? spiky_weights(rng, step)
                                           : near_uniform_weights(rng, step);
        }
        break;
    }
    rec.logits = logits.values();
    trace.steps.push_back(std::move(rec));
  }
  trace.turn_texts = std::move(texts);
  return trace;
}

bool meets_contract(const AttentionTrace& trace, Scenario scenario) {
  const AnalysisConfig config;
  const SwitchReport report = analyze(trace, config);
  const bool any_flag =
      std::find(report.variation_flags.begin(), report.variation_flags.end(),
                true) != report.variation_flags.end();
  const bool any_event = !report.attention_events.empty() ||
                         !report.context_events.empty() || any_flag;
  switch (scenario) {
    case Scenario::kConstant:
      return !any_event;
    case Scenario::kSpikyStop:
      return alpha_at_stop(trace) > config.tau_a;
    case Scenario::kUniformStop:
      return alpha_at_stop(trace) <= config.tau_a && any_event;
    case Scenario::kSwitchRich:
      return !report.attention_events.empty() &&
             !report.context_events.empty() && any_flag;
  }
  return false;
}

std::string lowercase_word(std::string_view word) {
  std::string out(word);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::vector<std::string> words_of(std::string_view text) {
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() &&
           !std::isalnum(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    std::size_t j = i;
    while (j < text.size() &&
           std::isalnum(static_cast<unsigned char>(text[j]))) {
      ++j;
    }
    if (j > i) words.push_back(lowercase_word(text.substr(i, j - i)));
    i = j;
  }
  return words;
}

std::vector<double> softmax(const std::vector<double>& logits) {
  const double top = *std::max_element(logits.begin(), logits.end());
  std::vector<double> w(logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = std::exp(logits[i] - top);
    sum += w[i];
  }
  for (double& v : w) v /= sum;
  return w;
}

}  // namespace

std::uint64_t Rng::below(std::uint64_t n) {
  // Reject the low 2^64 mod n values so every residue is equally likely.
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t x = next();
    if (x >= threshold) return x % n;
  }
}

std::string_view to_string(Scenario scenario) noexcept {
  switch (scenario) {
    case Scenario::kUniformStop:
      return "uniform_stop";
    case Scenario::kSpikyStop:
      return "spiky_stop";
    case Scenario::kSwitchRich:
      return "switch_rich";
    case Scenario::kConstant:
      return "constant";
  }
  return "unknown";
}

std::optional<Scenario> parse_scenario(std::string_view name) noexcept {
  for (Scenario s : {Scenario::kUniformStop, Scenario::kSpikyStop,
                     Scenario::kSwitchRich, Scenario::kConstant}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::size_t sample_turn_count(Rng& rng, std::size_t min_turns,
                              std::size_t max_turns) {
  if (min_turns < 1 || min_turns > max_turns || min_turns > kShapeMaxTurns) {
    throw InfeasibleSpecError("turn bounds [" + std::to_string(min_turns) +
                              ", " + std::to_string(max_turns) +
                              "] do not intersect [1, 43]");
  }
  // Inverse CDF over the shape restricted to [min_turns, max_turns]; same
  // distribution as rejection sampling, but one draw even for narrow tails.
  const std::size_t hi = std::min(max_turns, kShapeMaxTurns);
  std::array<double, kShapeMaxTurns + 1> mass{};
  double total = 0.0;
  for (std::size_t n = min_turns; n <= hi; ++n) {
    mass[n] = turn_count_mass(n);
    total += mass[n];
  }
  const double u = rng.uniform() * total;
  double cumulative = 0.0;
  for (std::size_t n = min_turns; n < hi; ++n) {
    cumulative += mass[n];
    if (u < cumulative) return n;
  }
  return hi;
}

std::vector<AttentionTrace> generate_corpus(const GenSpec& spec) {
  if (!(spec.escalation_rate >= 0.0 && spec.escalation_rate <= 1.0)) {
    throw InfeasibleSpecError("escalation_rate must lie in [0, 1]");
  }
  std::size_t min_turns = spec.min_turns;
  if (spec.scenario != Scenario::kConstant) {
    min_turns = std::max<std::size_t>(min_turns, 2);
    if (spec.max_turns < 2) {
      throw InfeasibleSpecError("scenario " +
                                std::string(to_string(spec.scenario)) +
                                " needs conversations of at least 2 turns");
    }
  }

  Rng rng(spec.seed);
  std::vector<AttentionTrace> corpus;
  corpus.reserve(spec.n_conversations);
  for (std::size_t c = 0; c < spec.n_conversations; ++c) {
    const std::size_t n = sample_turn_count(rng, min_turns, spec.max_turns);
    AttentionTrace trace;
    constexpr int kMaxAttempts = 64;
    int attempt = 0;
    do {
      if (++attempt > kMaxAttempts) {
        throw std::logic_error("generator failed to meet the " +
                               std::string(to_string(spec.scenario)) +
                               " contract");
      }
      trace = build_trace(rng, spec.scenario, n);
    } while (!meets_contract(trace, spec.scenario));

    char id[32];
    std::snprintf(id, sizeof(id), "conv-%05zu", c + 1);
    trace.id = id;
    trace.escalated = rng.bernoulli(spec.escalation_rate);
    if (trace.escalated) trace.escalation_turn = n;
    corpus.push_back(std::move(trace));
  }
  return corpus;
}

AttentionTrace toy_attention_trace(
    std::span<const std::string> turns,
    const std::map<std::string, double, std::less<>>& keyword_weights,
    double recency_bonus) {
  if (turns.empty()) {
    throw std::invalid_argument("toy_attention_trace needs at least one turn");
  }

  std::vector<double> score(turns.size(), 0.0);
  std::vector<bool> matched(turns.size(), false);
  for (std::size_t j = 0; j < turns.size(); ++j) {
    for (const auto& word : words_of(turns[j])) {
      auto it = keyword_weights.find(word);
      if (it == keyword_weights.end()) continue;
      score[j] = matched[j] ? std::max(score[j], it->second) : it->second;
      matched[j] = true;
    }
  }

  AttentionTrace trace;
  trace.id = "toy";
  trace.turn_texts.emplace(turns.begin(), turns.end());
  for (std::size_t step = 1; step <= turns.size(); ++step) {
    StepRecord rec;
    rec.step_index = step;
    rec.logits.assign(score.begin(), score.begin() + step);
    if (matched[step - 1]) rec.logits[step - 1] += recency_bonus;
    rec.weights = softmax(rec.logits);
    trace.steps.push_back(std::move(rec));
  }
  return trace;
}

}  // namespace attnswitch
