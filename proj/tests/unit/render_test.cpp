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

#include <string>
#include <vector>

#include "attnswitch/render.hpp"
#include "attnswitch/visualizer.hpp"
#include "fixtures.hpp"
#include "golden.hpp"

namespace attnswitch {
namespace {

using testing::expect_golden;

const RenderOptions kTerminal{RenderMode::kTerminal, true};
const RenderOptions kPlain{RenderMode::kTerminal, false};
const RenderOptions kHtml{RenderMode::kHtml, true};

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < s.size()) {
    const auto end = s.find('\n', start);
    lines.push_back(s.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

// A refund conversation whose last two turns carry every switch kind.
VisualizationResult refund_result() {
  return {VisualSource::kSwitchMethod, {0.0, 1.0 / 3, 1.0 / 3, 1.0, 1.0}, 0.0};
}

const std::vector<std::string> kRefundTexts{
    "where do you check to see about a refund that AIRLINE is giving us for a "
    "portion of our travel we did not get ?",
    "check refund status",
    "refund processing times",
    "check refund status",
    "check refund status",
};

TEST(RenderTerminal, DarkestShadeOnlyOnFullIntensity) {
  const auto lines =
      split_lines(render(refund_result(), "refund", kRefundTexts, kTerminal));
  ASSERT_EQ(lines.size(), 6u);
  EXPECT_EQ(lines[0], "== refund | source=switch_method | stop_alpha=0.000000 ==");
  EXPECT_EQ(lines[1].find("\x1b["), std::string::npos);
  EXPECT_NE(lines[2].find("\x1b[48;5;189m"), std::string::npos);
  EXPECT_NE(lines[3].find("\x1b[48;5;189m"), std::string::npos);
  for (int row : {4, 5}) {
    EXPECT_NE(lines[row].find("\x1b[48;5;21m\x1b[38;5;231mcheck refund status\x1b[0m"),
              std::string::npos)
        << lines[row];
  }
  for (int row : {1, 2, 3}) {
    EXPECT_EQ(lines[row].find("48;5;21m"), std::string::npos);
  }
}

TEST(RenderTerminal, ZeroIntensityIsUncolored) {
  VisualizationResult r{VisualSource::kSwitchMethod, {0.0, 0.0}, 0.0};
  const std::vector<std::string> texts{"a", "b"};
  EXPECT_EQ(render(r, "z", texts, kTerminal),
            "== z | source=switch_method | stop_alpha=0.000000 ==\n"
            "  1  0.000  a\n"
            "  2  0.000  b\n");
}

TEST(RenderTerminal, NoColorEmitsNoEscapes) {
  const auto out = render(refund_result(), "refund", kRefundTexts, kPlain);
  EXPECT_EQ(out.find('\x1b'), std::string::npos);
  EXPECT_NE(out.find("  4  1.000  check refund status\n"), std::string::npos);
}

TEST(RenderTerminal, ControlCharactersAreNeutralized) {
  VisualizationResult r{VisualSource::kSwitchMethod, {0.0}, 0.0};
  const std::vector<std::string> texts{"bad\x1b[2Jtext\n"};
  const auto out = render(r, "x", texts, kPlain);
  EXPECT_EQ(out.find('\x1b'), std::string::npos);
  EXPECT_NE(out.find("bad [2Jtext \n"), std::string::npos);
}

TEST(RenderTerminal, ModelAttentionUsesRamp) {
  VisualizationResult r{VisualSource::kModelAttention, {0.1, 0.1, 0.8}, 1.1};
  const std::vector<std::string> texts{"a", "b", "c"};
  const auto lines = split_lines(render(r, "m", texts, kTerminal));
  EXPECT_NE(lines[1].find("48;5;189m"), std::string::npos);
  EXPECT_NE(lines[3].find("48;5;21m"), std::string::npos);
}

TEST(RenderHtml, SwitchShadesAndEscaping) {
  const auto html = render(refund_result(), "a<b>", kRefundTexts, kHtml);
  EXPECT_EQ(html.rfind("<!DOCTYPE html>", 0), 0u);
  EXPECT_NE(html.find("<title>Turn influence: a&lt;b&gt;</title>"), std::string::npos);
  EXPECT_EQ(html.find("a<b>"), std::string::npos);
  const std::string darkest =
      "background-color:#2171b5;color:#ffffff\">check refund status</td>";
  std::size_t count = 0;
  for (auto pos = html.find(darkest); pos != std::string::npos;
       pos = html.find(darkest, pos + 1)) {
    ++count;
  }
  EXPECT_EQ(count, 2u);
  EXPECT_NE(html.find("#c6dbef;color:#000000\">check refund status"), std::string::npos);
}

TEST(Render, MissingTextsAndShapeErrors) {
  auto t = testing::switch_table_trace();
  const auto r = select_visualization(t, AnalysisConfig{});
  t.turn_texts.reset();
  EXPECT_THROW(render(r, t, kTerminal), MissingTextError);
  const std::vector<std::string> short_texts{"one"};
  EXPECT_THROW(render(r, "x", short_texts, kTerminal), std::invalid_argument);
}

TEST(Render, Deterministic) {
  const auto t = testing::mixed_causes_trace();
  const auto r = select_visualization(t, AnalysisConfig{});
  EXPECT_EQ(render(r, t, kTerminal), render(r, t, kTerminal));
  EXPECT_EQ(render(r, t, kHtml), render(r, t, kHtml));
}

TEST(RenderGolden, SwitchTable) {
  const auto t = testing::switch_table_trace();
  const auto r = select_visualization(t, AnalysisConfig{});
  expect_golden("reservation_terminal.txt", render(r, t, kTerminal));
  expect_golden("reservation_plain.txt", render(r, t, kPlain));
  expect_golden("reservation.html", render(r, t, kHtml));
}

TEST(RenderGolden, MixedCausesAndModelAttention) {
  const auto t = testing::mixed_causes_trace();
  expect_golden("kennel_terminal.txt",
                render(select_visualization(t, AnalysisConfig{}), t, kTerminal));
  VisualizationResult model{VisualSource::kModelAttention,
                            {0.05, 0.05, 0.1, 0.2, 0.1, 0.3, 0.2}, 1.5};
  expect_golden("kennel_model.html", render(model, t, kHtml));
}

}  // namespace
}  // namespace attnswitch
