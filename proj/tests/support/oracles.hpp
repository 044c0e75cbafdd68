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

// Reference implementations used only by tests. They evaluate the
// definitions directly, in extended precision where it matters, and share
// no code with the library beyond the plain data types.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <tuple>
#include <vector>

#include "attnswitch/trace.hpp"

namespace attnswitch::oracle {

// Entropy in bits, summed in long double with compensation.
inline long double entropy(const std::vector<double>& w) {
  long double sum = 0.0L;
  long double carry = 0.0L;
  for (double x : w) {
    if (x <= 0.0) continue;
    const long double p = x;
    const long double term = -p * std::log2(p) - carry;
    const long double next = sum + term;
    carry = (next - sum) - term;
    sum = next;
  }
  return sum;
}

inline long double perplexity(const std::vector<double>& w) {
  return std::exp2(entropy(w));
}

inline long double alpha(const std::vector<double>& w) {
  return static_cast<long double>(w.size()) - perplexity(w);
}

inline bool prefix_uniform(const AttentionTrace& t, std::size_t step,
                           double tau) {
  if (step == 1) return true;
  return alpha(t.steps[step - 1].weights) <= tau;
}

// (at_step, to_uniform) for every step whose verdict differs from the
// previous step's, recomputing both verdicts from scratch.
inline std::vector<std::pair<std::size_t, bool>> attention_events(
    const AttentionTrace& t, double tau) {
  std::vector<std::pair<std::size_t, bool>> out;
  for (std::size_t s = 2; s <= t.steps.size(); ++s) {
    const bool before = prefix_uniform(t, s - 1, tau);
    const bool after = prefix_uniform(t, s, tau);
    if (before != after) out.emplace_back(s, after);
  }
  return out;
}

struct ContextEvent {
  std::size_t turn;
  std::size_t step;
  double delta;
};

// Every pair (turn j, step s) with j < s, in (s, j) order.
inline std::vector<ContextEvent> context_events(const AttentionTrace& t,
                                                double tau) {
  std::vector<ContextEvent> out;
  const std::size_t n = t.steps.size();
  for (std::size_t s = 1; s <= n; ++s) {
    for (std::size_t j = 1; j <= n; ++j) {
      if (!(j < s)) continue;
      const double prev = t.steps[s - 2].logits[j - 1];
      const double cur = t.steps[s - 1].logits[j - 1];
      const double d = cur > prev ? cur - prev : prev - cur;
      if (d >= tau) out.push_back({j, s, d});
    }
  }
  return out;
}

// Mean absolute logit change of turn i over steps i..N, evaluated term by
// term from the formula; the final turn is 0.
inline std::vector<double> variation_means(const AttentionTrace& t) {
  const std::size_t n = t.steps.size();
  std::vector<double> means(n, 0.0);
  for (std::size_t i = 1; i <= n; ++i) {
    if (i == n) continue;
    double sum = 0.0;
    for (std::size_t k = i; k <= n - 1; ++k) {
      sum += std::fabs(t.steps[k - 1].logits[i - 1] - t.steps[k].logits[i - 1]);
    }
    means[i - 1] = sum / static_cast<double>(n - i);
  }
  return means;
}

// Per-turn intensities composed from the three oracles above.
inline std::vector<double> intensities(const AttentionTrace& t, double tau_a,
                                       double tau_c, double tau_v) {
  const std::size_t n = t.steps.size();
  std::vector<int> count(n, 0);
  for (const auto& [step, to_uniform] : attention_events(t, tau_a)) {
    (void)to_uniform;
    count[step - 1] += 1;
  }
  std::set<std::size_t> beta;
  for (const auto& e : context_events(t, tau_c)) beta.insert(e.turn);
  for (std::size_t turn : beta) count[turn - 1] += 1;
  const auto means = variation_means(t);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (means[i] >= tau_v) count[i] += 1;
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = count[i] / 3.0;
  return out;
}

// Order-statistic percentile: locates the two bracketing order statistics
// with nth_element and interpolates in long double.
inline double percentile(std::vector<double> pool, double pct) {
  const std::size_t n = pool.size();
  const long double h = static_cast<long double>(pct) / 100.0L * (n - 1);
  const auto lo = static_cast<std::size_t>(h);
  std::nth_element(pool.begin(), pool.begin() + lo, pool.end());
  const long double x_lo = pool[lo];
  long double x_hi = x_lo;
  if (lo + 1 < n) {
    x_hi = *std::min_element(pool.begin() + lo + 1, pool.end());
  }
  return static_cast<double>(x_lo + (h - lo) * (x_hi - x_lo));
}

}  // namespace attnswitch::oracle
