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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "attnswitch/calibration.hpp"
#include "attnswitch/trace_gen.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace attnswitch {
namespace {

using testing::make_trace;
using testing::uniform_row;

TEST(Percentile, LinearInterpolation) {
  EXPECT_NEAR(percentile({0.1, 0.2, 0.3, 0.4}, 75.0), 0.325, 1e-15);
  EXPECT_NEAR(percentile({0.4, 0.1, 0.3, 0.2}, 75.0), 0.325, 1e-15);
  EXPECT_EQ(percentile({0.1, 0.2, 0.3, 0.4}, 0.0), 0.1);
  EXPECT_EQ(percentile({0.1, 0.2, 0.3, 0.4}, 100.0), 0.4);
  EXPECT_EQ(percentile({5.0}, 42.0), 5.0);
  EXPECT_NEAR(percentile({1.0, 2.0, 3.0}, 50.0), 2.0, 1e-15);
}

TEST(Percentile, RejectsBadInput) {
  EXPECT_THROW(percentile({}, 50.0), EmptyPoolError);
  EXPECT_THROW(percentile({1.0}, -1.0), std::invalid_argument);
  EXPECT_THROW(percentile({1.0}, 100.5), std::invalid_argument);
}

TEST(Percentile, MatchesOrderStatisticOracle) {
  std::mt19937_64 rng(100);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> pool(1 + rng() % 500);
    for (auto& x : pool) x = u(rng) * (i % 3 == 0 ? 1e-3 : 1.0);
    for (double p : {1.0, 25.0, 50.0, 75.0, 90.0, 99.0, u(rng) * 100.0}) {
      EXPECT_NEAR(percentile(pool, p), oracle::percentile(pool, p), 1e-12);
    }
  }
}

TEST(Percentile, MonotoneInPct) {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    std::vector<double> pool(2 + rng() % 100);
    for (auto& x : pool) x = u(rng);
    double prev = percentile(pool, 0.0);
    for (double p = 1.0; p <= 100.0; p += 1.0) {
      const double cur = percentile(pool, p);
      EXPECT_GE(cur, prev);
      prev = cur;
    }
  }
}

TEST(Calibrate, SingleDelta) {
  auto t = make_trace({{1.0}, uniform_row(2)});
  t.steps[1].logits[0] = 0.4;
  const std::vector<AttentionTrace> corpus{t};
  for (double p : {10.0, 75.0, 99.0}) {
    const auto c = calibrate_thresholds(corpus, p);
    EXPECT_NEAR(c.tau_c, 0.4, 1e-15);
    EXPECT_NEAR(c.tau_v, 0.4, 1e-15);
    EXPECT_EQ(c.context_pool_size, 1u);
    EXPECT_EQ(c.variation_pool_size, 1u);
    EXPECT_FALSE(c.degenerate());
  }
}

TEST(Calibrate, PoolsEveryDeltaAndEveryNonFinalMean) {
  auto t = make_trace({{1.0}, uniform_row(2), uniform_row(3)});
  testing::shift_logit(t, 1, 2, 0.1);
  testing::shift_logit(t, 1, 3, 0.2);
  testing::shift_logit(t, 2, 3, 0.3);
  const std::vector<AttentionTrace> corpus{t, make_trace({{1.0}})};
  auto deltas = context_delta_pool(corpus);
  std::sort(deltas.begin(), deltas.end());
  ASSERT_EQ(deltas.size(), 3u);
  EXPECT_NEAR(deltas[0], 0.1, 1e-15);
  EXPECT_NEAR(deltas[1], 0.2, 1e-15);
  EXPECT_NEAR(deltas[2], 0.3, 1e-15);
  const auto means = variation_mean_pool(corpus);
  ASSERT_EQ(means.size(), 2u);
  EXPECT_NEAR(means[0], 0.15, 1e-15);
  EXPECT_NEAR(means[1], 0.3, 1e-15);
}

TEST(Calibrate, ConstantCorpusIsDegenerate) {
  GenSpec spec;
  spec.seed = 3;
  spec.n_conversations = 20;
  spec.scenario = Scenario::kConstant;
  spec.min_turns = 2;
  const auto corpus = generate_corpus(spec);
  const auto c = calibrate_thresholds(corpus);
  EXPECT_EQ(c.tau_c, 0.0);
  EXPECT_EQ(c.tau_v, 0.0);
  EXPECT_TRUE(c.degenerate());
}

TEST(Calibrate, EmptyPoolAndBadPercentile) {
  const std::vector<AttentionTrace> singles{make_trace({{1.0}}), make_trace({{1.0}})};
  EXPECT_THROW(calibrate_thresholds(singles), EmptyPoolError);
  EXPECT_THROW(calibrate_thresholds({}), EmptyPoolError);
  auto t = make_trace({{1.0}, uniform_row(2)});
  const std::vector<AttentionTrace> corpus{t};
  EXPECT_THROW(calibrate_thresholds(corpus, 0.0), std::invalid_argument);
  EXPECT_THROW(calibrate_thresholds(corpus, 100.0), std::invalid_argument);
}

TEST(Calibrate, ThresholdsGrowWithPercentile) {
  GenSpec spec;
  spec.seed = 9;
  spec.n_conversations = 200;
  spec.scenario = Scenario::kSwitchRich;
  const auto corpus = generate_corpus(spec);
  double prev_c = 0.0;
  double prev_v = 0.0;
  for (double p : {5.0, 25.0, 50.0, 75.0, 95.0}) {
    const auto c = calibrate_thresholds(corpus, p);
    EXPECT_GE(c.tau_c, prev_c);
    EXPECT_GE(c.tau_v, prev_v);
    prev_c = c.tau_c;
    prev_v = c.tau_v;
  }
}

}  // namespace
}  // namespace attnswitch
