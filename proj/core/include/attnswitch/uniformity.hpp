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
#include <span>

#include "attnswitch/trace.hpp"

namespace attnswitch {

// Perplexities within this distance of N are snapped to N, so that exactly
// uniform vectors (1/3, 1/3, 1/3 and friends) measure alpha == 0 despite
// float rounding in log2/exp2.
inline constexpr double kUniformSnap = 1e-12;

/**
 * Perplexity-based uniformity of a probability vector over N values.
 *
 *   perplexity = 2^H(w),  H(w) = sum w log2(1/w)  (0 log 0 := 0)
 *   alpha      = N - perplexity
 *
 * perplexity lies in [1, N] and alpha in [0, N - 1]; alpha is 0 iff the
 * vector is uniform.
 */
struct UniformityMeasure {
  std::size_t n = 0;
  double perplexity = 0.0;
  double alpha = 0.0;
};

// All of the functions below throw std::domain_error when the input is not
// a probability vector: empty, non-finite, an entry below -1e-9, or a sum
// more than kWeightSumTolerance away from 1.

// Entropy in bits.
double entropy(std::span<const double> weights);
double perplexity(std::span<const double> weights);
UniformityMeasure measure_uniformity(std::span<const double> weights);

// alpha(weights) <= tau. Throws std::domain_error when tau is outside
// [0, N - 1].
bool is_tau_uniform(std::span<const double> weights, double tau);

// alpha of the weights at the trace's stopping point (the escalation turn
// when recorded, otherwise the final step).
double alpha_at_stop(const AttentionTrace& trace);

}  // namespace attnswitch
