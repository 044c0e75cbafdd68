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

#include <benchmark/benchmark.h>

#include <vector>

#include "attnswitch/render.hpp"
#include "attnswitch/switches.hpp"
#include "attnswitch/trace_gen.hpp"
#include "attnswitch/uniformity.hpp"
#include "attnswitch/visualizer.hpp"

namespace {

using namespace attnswitch;

// One conversation of exactly `turns` turns from the given scenario.
AttentionTrace sample(Scenario scenario, std::size_t turns) {
  GenSpec spec;
  spec.seed = 1;
  spec.n_conversations = 1;
  spec.scenario = scenario;
  spec.min_turns = turns;
  spec.max_turns = turns;
  return generate_corpus(spec).front();
}

void BM_MeasureUniformity(benchmark::State& state) {
  const auto trace = sample(Scenario::kSpikyStop, state.range(0));
  const auto& w = trace.steps.back().weights;
  for (auto _ : state) benchmark::DoNotOptimize(measure_uniformity(w));
}
BENCHMARK(BM_MeasureUniformity)->Arg(4)->Arg(43);

void BM_Analyze(benchmark::State& state) {
  const auto trace = sample(Scenario::kSwitchRich, state.range(0));
  const AnalysisConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(analyze(trace, config));
}
BENCHMARK(BM_Analyze)->Arg(3)->Arg(8)->Arg(43);

void BM_SelectVisualization(benchmark::State& state) {
  const auto trace = sample(Scenario::kUniformStop, state.range(0));
  const AnalysisConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(select_visualization(trace, config));
}
BENCHMARK(BM_SelectVisualization)->Arg(3)->Arg(8)->Arg(43);

void BM_RenderTerminal(benchmark::State& state) {
  const auto trace = sample(Scenario::kUniformStop, state.range(0));
  const auto vis = select_visualization(trace, AnalysisConfig{});
  const RenderOptions options{RenderMode::kTerminal, true};
  for (auto _ : state) benchmark::DoNotOptimize(render(vis, trace, options));
}
BENCHMARK(BM_RenderTerminal)->Arg(8)->Arg(43);

void BM_RenderHtml(benchmark::State& state) {
  const auto trace = sample(Scenario::kUniformStop, state.range(0));
  const auto vis = select_visualization(trace, AnalysisConfig{});
  const RenderOptions options{RenderMode::kHtml, true};
  for (auto _ : state) benchmark::DoNotOptimize(render(vis, trace, options));
}
BENCHMARK(BM_RenderHtml)->Arg(8)->Arg(43);

}  // namespace

BENCHMARK_MAIN();
