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

#include "attnswitch/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace attnswitch {

namespace {

template <typename... Args>
std::string printf_str(const char* fmt, Args... args) {
  char buf[128];
  const int n = std::snprintf(buf, sizeof(buf), fmt, args...);
  return std::string(buf, static_cast<std::size_t>(std::max(n, 0)));
}

// 0 for an uncolored turn, otherwise an xterm-256 background index.
int ansi_background(VisualSource source, double intensity) {
  if (!(intensity > 0.0)) return 0;
  if (source == VisualSource::kSwitchMethod) {
    const long level = std::clamp(std::lround(intensity * 3.0), 1L, 3L);
    return kSwitchAnsiShades[level - 1];
  }
  const auto idx = std::min<std::size_t>(
      4, static_cast<std::size_t>(std::floor(std::min(intensity, 1.0) * 5.0)));
  return kModelAnsiRamp[idx];
}

// Light shades take dark text and vice versa.
int ansi_foreground(int background) {
  return (background == 189 || background == 147) ? 16 : 231;
}

std::string terminal_safe(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    const auto u = static_cast<unsigned char>(c);
    if (u < 0x20 || u == 0x7f) c = ' ';
  }
  return out;
}

std::string render_terminal(const VisualizationResult& result,
                            std::string_view id,
                            std::span<const std::string> texts, bool color) {
  std::string out;
  out += "== " + terminal_safe(id) + " | source=" +
         std::string(to_string(result.source)) +
         printf_str(" | stop_alpha=%.6f ==\n", result.stop_alpha);
  for (std::size_t t = 0; t < texts.size(); ++t) {
    const double v = result.per_turn[t];
    out += printf_str("%3zu  %5.3f  ", t + 1, v);
    const std::string text = terminal_safe(texts[t]);
    const int bg = color ? ansi_background(result.source, v) : 0;
    if (bg == 0) {
      out += text;
    } else {
      out += printf_str("\x1b[48;5;%dm\x1b[38;5;%dm", bg, ansi_foreground(bg));
      out += text;
      out += "\x1b[0m";
    }
    out += '\n';
  }
  return out;
}

struct Rgb {
  int r, g, b;
};

constexpr Rgb kWhite{255, 255, 255};
constexpr Rgb kModelDarkest{8, 48, 107};

std::string hex(Rgb c) { return printf_str("#%02x%02x%02x", c.r, c.g, c.b); }

std::string html_background(VisualSource source, double intensity) {
  if (!(intensity > 0.0)) return hex(kWhite);
  if (source == VisualSource::kSwitchMethod) {
    const long level = std::clamp(std::lround(intensity * 3.0), 1L, 3L);
    return kSwitchHtmlShades[level - 1];
  }
  const double t = std::min(intensity, 1.0);
  auto mix = [t](int from, int to) {
    return static_cast<int>(std::lround(from + t * (to - from)));
  };
  return hex({mix(kWhite.r, kModelDarkest.r), mix(kWhite.g, kModelDarkest.g),
              mix(kWhite.b, kModelDarkest.b)});
}

const char* html_foreground(double intensity) {
  return intensity >= 0.5 ? "#ffffff" : "#000000";
}

std::string html_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string swatch(VisualSource source, double intensity,
                   const std::string& label) {
  return "<td style=\"background-color:" + html_background(source, intensity) +
         ";color:" + html_foreground(intensity) + "\">" + label + "</td>";
}

std::string render_html(const VisualizationResult& result, std::string_view id,
                        std::span<const std::string> texts) {
  const std::string title = html_escape(id);
  std::string out;
  out +=
      "<!DOCTYPE html>\n"
      "<html lang=\"en\">\n"
      "<head>\n"
      "<meta charset=\"utf-8\">\n"
      "<title>Turn influence: " + title + "</title>\n"
      "<style>\n"
      "body{font-family:sans-serif;margin:2em;color:#222}\n"
      "table{border-collapse:collapse;margin-bottom:1.5em}\n"
      "th,td{border:1px solid #999;padding:4px 10px;text-align:left}\n"
      "td.num{text-align:right;font-variant-numeric:tabular-nums}\n"
      "</style>\n"
      "</head>\n"
      "<body>\n"
      "<h1>" + title + "</h1>\n"
      "<p>Source: <b>" + std::string(to_string(result.source)) + "</b>" +
      printf_str(" &middot; stop alpha: %.6f", result.stop_alpha) + "</p>\n"
      "<table class=\"turns\">\n"
      "<thead><tr><th>Turn</th><th>User text</th><th>Weight</th></tr></thead>\n"
      "<tbody>\n";
  for (std::size_t t = 0; t < texts.size(); ++t) {
    const double v = result.per_turn[t];
    out += "<tr><td class=\"num\">" + std::to_string(t + 1) + "</td>" +
           swatch(result.source, v, html_escape(texts[t])) +
           printf_str("<td class=\"num\">%.2f</td></tr>\n", v);
  }
  out += "</tbody>\n</table>\n<h2>Legend</h2>\n<table class=\"legend\"><tr>";
  if (result.source == VisualSource::kSwitchMethod) {
    out += swatch(result.source, 0.0, "0") +
           swatch(result.source, 1.0 / 3.0, "1/3 (" +
                  std::string(kSwitchHtmlShades[0]) + ")") +
           swatch(result.source, 2.0 / 3.0, "2/3 (" +
                  std::string(kSwitchHtmlShades[1]) + ")") +
           swatch(result.source, 1.0, "1 (" +
                  std::string(kSwitchHtmlShades[2]) + ")");
  } else {
    for (double v : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      out += swatch(result.source, v,
                    printf_str("%.2f (", v) +
                        html_background(result.source, v) + ")");
    }
  }
  out += "</tr></table>\n";
  if (result.source == VisualSource::kSwitchMethod) {
    out +=
        "<p>Intensity is the share of switch kinds (attention, context, "
        "variation) observed for the turn.</p>\n";
  } else {
    out += "<p>Intensity is the model attention weight at the stop point.</p>\n";
  }
  out += "</body>\n</html>\n";
  return out;
}

}  // namespace

std::string render(const VisualizationResult& result,
                   const AttentionTrace& trace, const RenderOptions& options) {
  if (!trace.turn_texts) {
    throw MissingTextError("trace \"" + trace.id + "\" has no turn texts");
  }
  return render(result, trace.id, *trace.turn_texts, options);
}

std::string render(const VisualizationResult& result, std::string_view id,
                   std::span<const std::string> turn_texts,
                   const RenderOptions& options) {
  if (turn_texts.size() != result.per_turn.size()) {
    throw std::invalid_argument(
        "render: " + std::to_string(turn_texts.size()) + " turn texts for " +
        std::to_string(result.per_turn.size()) + " intensities");
  }
  switch (options.mode) {
    case RenderMode::kTerminal:
      return render_terminal(result, id, turn_texts, options.color);
    case RenderMode::kHtml:
      return render_html(result, id, turn_texts);
  }
  return {};
}

}  // namespace attnswitch
