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

#include "cli.hpp"

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "analysis_record.hpp"
#include "attnswitch/calibration.hpp"
#include "attnswitch/corpus_io.hpp"
#include "attnswitch/corpus_report.hpp"
#include "attnswitch/parallel.hpp"
#include "attnswitch/render.hpp"
#include "attnswitch/switches.hpp"
#include "attnswitch/trace_gen.hpp"
#include "attnswitch/visualizer.hpp"
#include "bench.hpp"

namespace attnswitch::cli {

namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input;
  std::string out;
  AnalysisConfig config;
  unsigned workers = 1;

  // render
  std::string mode = "terminal";
  bool no_color = false;

  // calibrate
  double percentile = 75.0;

  // report
  std::string thresholds;

  // bench
  std::size_t reps = 1;

  // generate
  std::uint64_t seed = 0;
  std::string scenario = "uniform_stop";
  std::size_t count = 100;
  double escalation_rate = 0.5;
  std::size_t min_turns = 1;
  std::size_t max_turns = 43;
};

void add_input(CLI::App* sub, Options& opt) {
  sub->add_option("input", opt.input, "Corpus file, or - for standard input")
      ->required();
}

void add_thresholds(CLI::App* sub, Options& opt) {
  sub->add_option("--tau-a", opt.config.tau_a, "Uniformity threshold on alpha")
      ->capture_default_str();
  sub->add_option("--tau-c", opt.config.tau_c,
                  "Context switch threshold on logit deltas")
      ->capture_default_str();
  sub->add_option("--tau-v", opt.config.tau_v,
                  "Variation switch threshold on mean logit change")
      ->capture_default_str();
}

void add_workers(CLI::App* sub, Options& opt) {
  sub->add_option("--workers", opt.workers,
                  "Worker threads (0 = hardware concurrency)")
      ->capture_default_str();
}

void check_config(const AnalysisConfig& config) {
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::vector<AttentionTrace> load_input(const std::string& path,
                                       std::istream& in) {
  if (path == "-") return read_corpus(in);
  return load_corpus(path);
}

std::vector<std::string> read_lines(const std::string& path, std::istream& in) {
  std::ifstream file;
  std::istream* src = &in;
  if (path != "-") {
    file.open(path, std::ios::binary);
    if (!file) throw IoError("cannot open " + path + " for reading");
    src = &file;
  }
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(*src, line)) lines.push_back(std::move(line));
  return lines;
}

void emit(const std::string& out_path, const std::string& content,
          std::ostream& out) {
  if (out_path.empty() || out_path == "-") {
    out << content;
    return;
  }
  std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + out_path + " for writing");
  file << content;
  file.flush();
  if (!file) throw IoError("write failure on " + out_path);
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r\n") == std::string::npos;
}

std::vector<double> parse_threshold_list(const std::string& text) {
  std::vector<double> out;
  if (text.empty()) {
    for (int i = 0; i <= 20; ++i) out.push_back(i / 20.0);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos) {
      throw UsageError("--thresholds: cannot parse \"" + item + "\"");
    }
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("--thresholds: empty list");
  return out;
}

// --- subcommands ---------------------------------------------------------

int cmd_generate(const Options& opt, Streams io) {
  const auto scenario = parse_scenario(opt.scenario);
  if (!scenario) throw UsageError("unknown scenario " + opt.scenario);
  GenSpec spec;
  spec.seed = opt.seed;
  spec.n_conversations = opt.count;
  spec.scenario = *scenario;
  spec.escalation_rate = opt.escalation_rate;
  spec.min_turns = opt.min_turns;
  spec.max_turns = opt.max_turns;
  const auto corpus = generate_corpus(spec);
  std::ostringstream buf;
  write_corpus(corpus, buf);
  emit(opt.out, buf.str(), io.out);
  return kExitOk;
}

int cmd_validate(const Options& opt, Streams io) {
  const auto corpus = load_input(opt.input, io.in);
  io.out << "ok: " << corpus.size() << " conversations\n";
  return kExitOk;
}

int cmd_analyze(const Options& opt, Streams io) {
  check_config(opt.config);
  const auto corpus = load_input(opt.input, io.in);
  const auto lines = parallel_map(
      std::span<const AttentionTrace>(corpus),
      [&](const AttentionTrace& trace) {
        const SwitchReport report = analyze(trace, opt.config);
        const VisualizationResult vis =
            select_visualization(trace, opt.config, report);
        return format_analysis(trace, opt.config, report, vis);
      },
      opt.workers);
  std::string out;
  for (const auto& line : lines) out += line + '\n';
  emit(opt.out, out, io.out);
  return kExitOk;
}

struct RenderItem {
  std::string id;
  VisualizationResult result;
  std::vector<std::string> texts;
};

// Input lines may be corpus records or `analyze` output; analysis records
// are rendered as-is.
std::vector<RenderItem> load_render_items(const Options& opt, Streams io) {
  const auto lines = read_lines(opt.input, io.in);
  struct Pending {
    std::size_t line_no;
    const std::string* line;
  };
  std::vector<Pending> pending;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!blank(lines[i])) pending.push_back({i + 1, &lines[i]});
  }

  return parallel_map(
      std::span<const Pending>(pending),
      [&](const Pending& p) {
        RenderItem item;
        if (is_analysis_line(*p.line)) {
          AnalysisRecord rec = parse_analysis(*p.line, p.line_no);
          if (!rec.turns) {
            throw MissingTextError("line " + std::to_string(p.line_no) +
                                   ": record \"" + rec.id +
                                   "\" has no turn texts");
          }
          item.id = std::move(rec.id);
          item.result = std::move(rec.result);
          item.texts = std::move(*rec.turns);
          return item;
        }
        AttentionTrace trace = parse_trace(*p.line, p.line_no);
        ValidationResult v = validate_trace(trace);
        if (!v.ok()) {
          throw ValidationError("line " + std::to_string(p.line_no) + ": " +
                                    v.violations.front().message,
                                p.line_no, std::move(v.violations));
        }
        if (!trace.turn_texts) {
          throw MissingTextError("line " + std::to_string(p.line_no) +
                                 ": trace \"" + trace.id +
                                 "\" has no turn texts");
        }
        item.result = select_visualization(trace, opt.config);
        item.id = std::move(trace.id);
        item.texts = std::move(*trace.turn_texts);
        return item;
      },
      opt.workers);
}

std::string html_file_name(const std::string& id) {
  std::string name;
  for (char c : id) {
    const bool keep = std::isalnum(static_cast<unsigned char>(c)) || c == '-' ||
                      c == '_' || c == '.';
    name += keep ? c : '_';
  }
  if (name.empty() || name.front() == '.') name.insert(0, "conv");
  return name + ".html";
}

int cmd_render(const Options& opt, Streams io) {
  check_config(opt.config);
  RenderOptions options;
  if (opt.mode == "html") {
    options.mode = RenderMode::kHtml;
    if (opt.out.empty()) throw UsageError("--mode html needs --out <directory>");
  } else {
    options.mode = RenderMode::kTerminal;
    const char* no_color = std::getenv("NO_COLOR");
    options.color = !opt.no_color && !(no_color && *no_color);
  }

  const auto items = load_render_items(opt, io);

  if (options.mode == RenderMode::kTerminal) {
    std::string out;
    for (const auto& item : items) {
      out += render(item.result, item.id, item.texts, options);
    }
    emit(opt.out, out, io.out);
    return kExitOk;
  }

  std::set<std::string> names;
  for (const auto& item : items) {
    if (!names.insert(html_file_name(item.id)).second) {
      throw IoError("two conversations map to file " + html_file_name(item.id));
    }
  }
  std::error_code ec;
  fs::create_directories(opt.out, ec);
  if (ec) throw IoError("cannot create directory " + opt.out + ": " + ec.message());
  for (const auto& item : items) {
    const fs::path path = fs::path(opt.out) / html_file_name(item.id);
    emit(path.string(), render(item.result, item.id, item.texts, options),
         io.out);
    io.out << path.string() << '\n';
  }
  return kExitOk;
}

int cmd_calibrate(const Options& opt, Streams io) {
  if (!(opt.percentile > 0.0 && opt.percentile < 100.0)) {
    throw UsageError("--percentile must lie in (0, 100)");
  }
  const auto corpus = load_input(opt.input, io.in);
  const CalibratedThresholds t = calibrate_thresholds(corpus, opt.percentile);
  if (t.degenerate()) {
    io.err << "warning: degenerate calibration (tau_c=" << t.tau_c
           << ", tau_v=" << t.tau_v
           << "); logits barely change across steps in this corpus\n";
  }
  std::ostringstream buf;
  buf.precision(17);
  buf << "{\n  \"percentile\": " << t.percentile << ",\n  \"tau_c\": " << t.tau_c
      << ",\n  \"tau_v\": " << t.tau_v
      << ",\n  \"context_pool_size\": " << t.context_pool_size
      << ",\n  \"variation_pool_size\": " << t.variation_pool_size << "\n}\n";
  emit(opt.out, buf.str(), io.out);
  return kExitOk;
}

int cmd_report(const Options& opt, Streams io) {
  check_config(opt.config);
  const std::vector<double> thresholds = parse_threshold_list(opt.thresholds);
  const auto corpus = load_input(opt.input, io.in);
  if (corpus.empty()) throw IoError("report needs a non-empty corpus");

  UniformityCurve curve;
  try {
    curve = uniformity_curve(corpus, opt.config, thresholds, opt.workers);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const CorpusStats stats = corpus_statistics(corpus, opt.config, opt.workers);

  if (opt.out.empty()) {
    io.out << stats_to_json(stats) << '\n' << curve_to_csv(curve);
    return kExitOk;
  }
  std::error_code ec;
  fs::create_directories(opt.out, ec);
  if (ec) throw IoError("cannot create directory " + opt.out + ": " + ec.message());
  const fs::path dir(opt.out);
  emit((dir / "stats.json").string(), stats_to_json(stats), io.out);
  emit((dir / "uniformity_curve.csv").string(), curve_to_csv(curve), io.out);
  io.out << (dir / "stats.json").string() << '\n'
         << (dir / "uniformity_curve.csv").string() << '\n';
  return kExitOk;
}

int cmd_bench(const Options& opt, Streams io) {
  check_config(opt.config);
  if (opt.reps == 0) throw UsageError("--reps must be >= 1");
  const auto corpus = load_input(opt.input, io.in);
  if (corpus.empty()) throw IoError("bench needs a non-empty corpus");
  emit(opt.out, bench_to_json(run_bench(corpus, opt.config, opt.reps)), io.out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, Streams io) {
  CLI::App app{
      "Attention-trace analysis: uniformity, attention/context/variation "
      "switches and fallback turn visualizations",
      "attnswitch"};
  app.require_subcommand(1);
  Options opt;

  auto* generate = app.add_subcommand("generate", "Write a synthetic corpus");
  generate->add_option("--seed", opt.seed, "Generator seed")->capture_default_str();
  generate->add_option("--scenario", opt.scenario, "Corpus scenario")
      ->check(CLI::IsMember(
          {"uniform_stop", "spiky_stop", "switch_rich", "constant"}))
      ->capture_default_str();
  generate->add_option("--count", opt.count, "Number of conversations")
      ->capture_default_str();
  generate->add_option("--escalation-rate", opt.escalation_rate,
                       "Share of escalated conversations")
      ->capture_default_str();
  generate->add_option("--min-turns", opt.min_turns)->capture_default_str();
  generate->add_option("--max-turns", opt.max_turns)->capture_default_str();
  generate->add_option("--out", opt.out, "Output file (default: stdout)");

  auto* validate = app.add_subcommand("validate", "Check a corpus file");
  add_input(validate, opt);

  auto* analyze_cmd =
      app.add_subcommand("analyze", "Per-conversation analysis as JSON lines");
  add_input(analyze_cmd, opt);
  add_thresholds(analyze_cmd, opt);
  add_workers(analyze_cmd, opt);
  analyze_cmd->add_option("--out", opt.out, "Output file (default: stdout)");

  auto* render_cmd = app.add_subcommand(
      "render", "Render conversations from a corpus or from analyze output");
  add_input(render_cmd, opt);
  add_thresholds(render_cmd, opt);
  add_workers(render_cmd, opt);
  render_cmd->add_option("--mode", opt.mode, "terminal or html")
      ->check(CLI::IsMember({"terminal", "html"}))
      ->capture_default_str();
  render_cmd->add_flag("--no-color", opt.no_color,
                       "Plain text terminal output (also NO_COLOR)");
  render_cmd->add_option("--out", opt.out,
                         "Output file (terminal) or directory (html)");

  auto* calibrate = app.add_subcommand(
      "calibrate", "Percentile calibration of tau_c and tau_v");
  add_input(calibrate, opt);
  calibrate->add_option("--percentile", opt.percentile)->capture_default_str();
  calibrate->add_option("--out", opt.out, "Output file (default: stdout)");

  auto* report = app.add_subcommand(
      "report", "Corpus switch statistics and uniformity curve");
  add_input(report, opt);
  add_thresholds(report, opt);
  add_workers(report, opt);
  report->add_option("--thresholds", opt.thresholds,
                     "Comma-separated alpha thresholds (default 0,0.05,..,1)");
  report->add_option("--out", opt.out,
                     "Directory for stats.json and uniformity_curve.csv");

  auto* bench = app.add_subcommand("bench", "Per-conversation latency");
  add_input(bench, opt);
  add_thresholds(bench, opt);
  bench->add_option("--reps", opt.reps, "Passes over the corpus")
      ->capture_default_str();
  bench->add_option("--out", opt.out, "Output file (default: stdout)");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, io.out, io.err);
    return code == 0 ? kExitOk : kExitUsageError;
  }

  try {
    if (generate->parsed()) return cmd_generate(opt, io);
    if (validate->parsed()) return cmd_validate(opt, io);
    if (analyze_cmd->parsed()) return cmd_analyze(opt, io);
    if (render_cmd->parsed()) return cmd_render(opt, io);
    if (calibrate->parsed()) return cmd_calibrate(opt, io);
    if (report->parsed()) return cmd_report(opt, io);
    if (bench->parsed()) return cmd_bench(opt, io);
  } catch (const UsageError& e) {
    io.err << "error: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const InfeasibleSpecError& e) {
    io.err << "error: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitUsageError;
}

}  // namespace attnswitch::cli
