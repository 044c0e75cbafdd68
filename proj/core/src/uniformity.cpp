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

#include "attnswitch/uniformity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace attnswitch {

namespace {

constexpr double kNegativeTolerance = 1e-9;

void check_distribution(std::span<const double> weights) {
  if (weights.empty()) {
    throw std::domain_error("probability vector must not be empty");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w)) {
      throw std::domain_error("probability vector has a non-finite entry");
    }
    if (w < -kNegativeTolerance) {
      throw std::domain_error("probability vector has a negative entry " +
                              std::to_string(w));
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > kWeightSumTolerance) {
    throw std::domain_error("probability vector sums to " +
                            std::to_string(sum) + ", not 1");
  }
}

double entropy_unchecked(std::span<const double> weights) {
  double h = 0.0;
  for (double w : weights) {
    if (w > 0.0) h -= w * std::log2(w);
  }
  // Entries may exceed the simplex by the sum tolerance.
  return std::clamp(h, 0.0, std::log2(static_cast<double>(weights.size())));
}

double perplexity_unchecked(std::span<const double> weights) {
  const double n = static_cast<double>(weights.size());
  double p = std::exp2(entropy_unchecked(weights));
  p = std::clamp(p, 1.0, n);
  if (n - p <= kUniformSnap) p = n;
  return p;
}

}  // namespace

double entropy(std::span<const double> weights) {
  check_distribution(weights);
  return entropy_unchecked(weights);
}

double perplexity(std::span<const double> weights) {
  check_distribution(weights);
  return perplexity_unchecked(weights);
}

UniformityMeasure measure_uniformity(std::span<const double> weights) {
  check_distribution(weights);
  UniformityMeasure m;
  m.n = weights.size();
  m.perplexity = perplexity_unchecked(weights);
  m.alpha = static_cast<double>(m.n) - m.perplexity;
  return m;
}

bool is_tau_uniform(std::span<const double> weights, double tau) {
  const UniformityMeasure m = measure_uniformity(weights);
  const double upper = static_cast<double>(m.n - 1);
  if (!(tau >= 0.0 && tau <= upper)) {
    throw std::domain_error("tau " + std::to_string(tau) +
                            " outside [0, " + std::to_string(upper) + "]");
  }
  return m.alpha <= tau;
}

double alpha_at_stop(const AttentionTrace& trace) {
  return measure_uniformity(trace.step(trace.stop_step()).weights).alpha;
}

}  // namespace attnswitch
