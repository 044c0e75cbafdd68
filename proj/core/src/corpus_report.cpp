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

#include "attnswitch/corpus_report.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <set>
#include <stdexcept>

#include "attnswitch/parallel.hpp"
#include "attnswitch/switches.hpp"
#include "attnswitch/uniformity.hpp"
#include "attnswitch/visualizer.hpp"
#include "json.hpp"

namespace attnswitch {

namespace {

CorpusStats trace_statistics(const AttentionTrace& trace,
                             const AnalysisConfig& config) {
  CorpusStats s;
  s.n_conversations = 1;
  s.n_turns = trace.turn_count();
  if (trace.turn_count() < 2) return s;

  const SwitchReport report = analyze(trace, config);
  const std::optional<std::size_t> escalation =
      trace.escalated ? std::optional(trace.stop_step()) : std::nullopt;

  std::set<std::size_t> switched;
  std::set<std::size_t> switched_at_escalation;
  for (const auto& e : report.context_events) {
    switched.insert(e.affected_turn);
    if (e.caused_by_step == escalation) {
      switched_at_escalation.insert(e.affected_turn);
    }
  }
  s.context_switch_turns = switched.size();
  s.context_coincide_escalation = switched_at_escalation.size();

  for (std::size_t t = 0; t < report.variation_flags.size(); ++t) {
    if (!report.variation_flags[t]) continue;
    ++s.variation_switch_turns;
    if (t + 1 == escalation) ++s.variation_coincide_escalation;
  }

  for (const auto& e : report.attention_events) {
    const bool at_escalation = e.at_step == escalation;
    if (e.direction == Direction::kUniformToNonuniform) {
      ++s.uniform_to_nonuniform_pairs;
      if (at_escalation) ++s.u2n_coincide_escalation;
    } else {
      ++s.nonuniform_to_uniform_pairs;
      if (at_escalation) ++s.n2u_coincide_escalation;
    }
  }
  return s;
}

void accumulate(CorpusStats& into, const CorpusStats& s) {
  into.n_conversations += s.n_conversations;
  into.n_turns += s.n_turns;
  into.context_switch_turns += s.context_switch_turns;
  into.context_coincide_escalation += s.context_coincide_escalation;
  into.variation_switch_turns += s.variation_switch_turns;
  into.variation_coincide_escalation += s.variation_coincide_escalation;
  into.uniform_to_nonuniform_pairs += s.uniform_to_nonuniform_pairs;
  into.nonuniform_to_uniform_pairs += s.nonuniform_to_uniform_pairs;
  into.u2n_coincide_escalation += s.u2n_coincide_escalation;
  into.n2u_coincide_escalation += s.n2u_coincide_escalation;
}

// Renormalizes the intensities to a distribution and applies the t-uniform
// test. The all-zero vector carries no information and counts as uniform.
bool intensities_uniform(const std::vector<double>& intensities, double t) {
  double sum = 0.0;
  for (double v : intensities) sum += v;
  if (sum <= 0.0) return true;
  std::vector<double> dist(intensities.size());
  for (std::size_t i = 0; i < dist.size(); ++i) dist[i] = intensities[i] / sum;
  return measure_uniformity(dist).alpha <= t;
}

struct CurvePoint {
  std::uint8_t model_uniform;
  std::uint8_t fallback_uniform;
};

}  // namespace

CorpusStats corpus_statistics(std::span<const AttentionTrace> corpus,
                              const AnalysisConfig& config, unsigned workers) {
  const auto per_trace = parallel_map(
      corpus,
      [&config](const AttentionTrace& t) { return trace_statistics(t, config); },
      workers);
  CorpusStats total;
  for (const auto& s : per_trace) accumulate(total, s);
  return total;
}

UniformityCurve uniformity_curve(std::span<const AttentionTrace> corpus,
                                 const AnalysisConfig& config,
                                 std::span<const double> thresholds,
                                 unsigned workers) {
  if (corpus.empty()) {
    throw std::invalid_argument("uniformity curve needs a non-empty corpus");
  }
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (!(thresholds[i] >= 0.0) || !std::isfinite(thresholds[i])) {
      throw std::invalid_argument("curve thresholds must be finite and >= 0");
    }
    if (i > 0 && thresholds[i] < thresholds[i - 1]) {
      throw std::invalid_argument("curve thresholds must be ascending");
    }
  }

  const auto points = parallel_map(
      corpus,
      [&](const AttentionTrace& trace) {
        std::vector<CurvePoint> row;
        row.reserve(thresholds.size());
        const double stop_alpha = alpha_at_stop(trace);
        AnalysisConfig at_t = config;
        for (double t : thresholds) {
          at_t.tau_a = t;
          const VisualizationResult vis = select_visualization(trace, at_t);
          row.push_back({stop_alpha <= t,
                         intensities_uniform(vis.per_turn, t)});
        }
        return row;
      },
      workers);

  UniformityCurve curve;
  curve.thresholds.assign(thresholds.begin(), thresholds.end());
  const double n = static_cast<double>(corpus.size());
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    std::size_t model = 0;
    std::size_t fallback = 0;
    for (const auto& row : points) {
      model += row[i].model_uniform;
      fallback += row[i].fallback_uniform;
    }
    curve.fraction_uniform_model.push_back(static_cast<double>(model) / n);
    curve.fraction_uniform_fallback.push_back(static_cast<double>(fallback) / n);
  }
  return curve;
}

std::string curve_to_csv(const UniformityCurve& curve) {
  std::string out = "threshold,model_uniform_frac,fallback_uniform_frac\n";
  char buf[96];
  for (std::size_t i = 0; i < curve.thresholds.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.6g,%.6f,%.6f\n", curve.thresholds[i],
                  curve.fraction_uniform_model[i],
                  curve.fraction_uniform_fallback[i]);
    out += buf;
  }
  return out;
}

std::string stats_to_json(const CorpusStats& s) {
  nlohmann::ordered_json j;
  j["n_conversations"] = s.n_conversations;
  j["n_turns"] = s.n_turns;
  j["context_switch_turns"] = s.context_switch_turns;
  j["context_coincide_escalation"] = s.context_coincide_escalation;
  j["variation_switch_turns"] = s.variation_switch_turns;
  j["variation_coincide_escalation"] = s.variation_coincide_escalation;
  j["uniform_to_nonuniform_pairs"] = s.uniform_to_nonuniform_pairs;
  j["nonuniform_to_uniform_pairs"] = s.nonuniform_to_uniform_pairs;
  j["u2n_coincide_escalation"] = s.u2n_coincide_escalation;
  j["n2u_coincide_escalation"] = s.n2u_coincide_escalation;
  return j.dump(2) + "\n";
}

}  // namespace attnswitch
