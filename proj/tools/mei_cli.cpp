// Copyright 2026 The MEI Metrics Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Batch front end: per-frame timeseries, event extraction, corpus thresholds
// and collision filtering over trajectory files.

#include "mei/classifier.hpp"
#include "mei/dataset_adapter.hpp"
#include "mei/errors.hpp"
#include "mei/metrics.hpp"
#include "mei/pipeline.hpp"
#include "mei/stats.hpp"
#include "mei/tables.hpp"
#include "mei/trajectory_io.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#ifndef MEI_VERSION
#define MEI_VERSION "0.0.0"
#endif

namespace
{

namespace fs = std::filesystem;

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kSchema = 2,
  kNotFound = 3,
  kEmptyInput = 4,
  kIo = 5,
};

class EmptyInputError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct Options
{
  std::vector<std::string> inputs;
  std::string format = "canonical";
  double d_safe = 0.0;
  double tem_star = 3.0;
  std::string q = "approach_distance";
  double pet_grid = 0.1;
  std::optional<double> mei_cap;
  std::string scenario;
  std::string pair;
  std::string out;
  std::size_t jobs = 1;
  bool positive_mei = false;
  bool all_events = false;
  double bin_mei = 0.1;
  double bin_act = 0.25;
  double bin_pet = 0.5;
};

std::string utc_now()
{
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

mei::metrics::MetricsConfig make_config(const Options & o)
{
  mei::metrics::MetricsConfig cfg;
  cfg.d_safe = o.d_safe;
  cfg.tem_star = o.tem_star;
  cfg.pet_grid = o.pet_grid;
  cfg.mei_cap = o.mei_cap;
  const auto q = mei::metrics::parse_q_predicate(o.q);
  if (!q) {
    throw CLI::ValidationError("--q", "unknown predicate '" + o.q + "'");
  }
  cfg.q_predicate = *q;
  cfg.validate();
  return cfg;
}

mei::pipeline::Selector make_selector(const Options & o)
{
  mei::pipeline::Selector sel;
  if (!o.scenario.empty()) {
    sel.scenario_id = o.scenario;
  }
  if (!o.pair.empty()) {
    const auto comma = o.pair.find(',');
    if (comma == std::string::npos || comma == 0 || comma + 1 == o.pair.size()) {
      throw CLI::ValidationError("--pair", "expected A,B");
    }
    sel.pair = std::make_pair(o.pair.substr(0, comma), o.pair.substr(comma + 1));
  }
  return sel;
}

/// Run bookkeeping written next to every output file.
class Manifest
{
public:
  Manifest(std::string command, const Options & o, const mei::metrics::MetricsConfig * cfg)
  {
    doc_["tool"] = "mei";
    doc_["version"] = MEI_VERSION;
    doc_["command"] = std::move(command);
    doc_["inputs"] = o.inputs;
    doc_["format"] = o.format;
    if (cfg != nullptr) {
      doc_["config"] = {
        {"d_safe", cfg->d_safe},
        {"tem_star", cfg->tem_star},
        {"q", std::string(mei::metrics::to_string(cfg->q_predicate))},
        {"pet_grid", cfg->pet_grid},
        {"mei_cap", cfg->mei_cap ? nlohmann::ordered_json(*cfg->mei_cap) : nlohmann::ordered_json(nullptr)},
        {"jobs", o.jobs},
      };
    }
    if (!o.scenario.empty()) {
      doc_["selector"]["scenario"] = o.scenario;
    }
    if (!o.pair.empty()) {
      doc_["selector"]["pair"] = o.pair;
    }
    doc_["start_time"] = utc_now();
  }

  void count(const std::string & key, std::size_t value) { doc_["counts"][key] = value; }
  void output(const std::string & path) { doc_["outputs"].push_back(path); }

  std::string finish()
  {
    doc_["end_time"] = utc_now();
    return doc_.dump(2) + "\n";
  }

private:
  nlohmann::ordered_json doc_;
};

/// Writes named outputs to --out, or the primary one to stdout.
class Sink
{
public:
  explicit Sink(const Options & o) : dir_(o.out)
  {
    if (!dir_.empty()) {
      std::error_code ec;
      fs::create_directories(dir_, ec);
      if (ec) {
        throw IoError("cannot create output directory '" + dir_ + "': " + ec.message());
      }
    }
  }

  void write(const std::string & name, const std::string & content, Manifest & manifest, bool primary = true)
  {
    if (dir_.empty()) {
      if (primary) {
        std::cout << content;
      }
      return;
    }
    const fs::path path = fs::path(dir_) / name;
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f || !(f << content)) {
      throw IoError("cannot write '" + path.string() + "'");
    }
    manifest.output(name);
  }

  void finish(Manifest & manifest)
  {
    if (dir_.empty()) {
      return;
    }
    const std::string text = manifest.finish();
    std::ofstream f(fs::path(dir_) / "manifest.json", std::ios::binary | std::ios::trunc);
    if (!f || !(f << text)) {
      throw IoError("cannot write manifest");
    }
  }

private:
  std::string dir_;
};

std::vector<mei::io::Scenario> load_corpus(const Options & o, Manifest & manifest)
{
  if (o.format != "canonical" && o.format != "dataset") {
    throw CLI::ValidationError("--format", "expected canonical or dataset");
  }
  std::vector<mei::io::Scenario> all;
  std::set<std::string> seen;
  std::size_t errors = 0;
  std::size_t warnings = 0;
  for (const auto & path : o.inputs) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw IoError("cannot open input '" + path + "'");
    }
    mei::io::ParseResult parsed = o.format == "canonical" ? mei::io::parse_canonical(in) : mei::io::adapt_external(in);
    for (const auto & d : parsed.diagnostics) {
      std::cerr << path << ": " << mei::io::format(d) << '\n';
      (d.severity == mei::io::Diagnostic::Severity::kError ? errors : warnings)++;
    }
    for (auto & sc : parsed.scenarios) {
      if (!seen.insert(sc.scenario_id).second) {
        throw mei::SchemaError("scenario '" + sc.scenario_id + "' appears in more than one input", "scenario_id");
      }
      all.push_back(std::move(sc));
    }
  }
  std::sort(all.begin(), all.end(), [](const auto & l, const auto & r) { return l.scenario_id < r.scenario_id; });
  manifest.count("scenarios", all.size());
  manifest.count("row_errors", errors);
  manifest.count("warnings", warnings);
  return all;
}

const mei::pipeline::PairAnalysis & single_pair(const std::vector<mei::pipeline::PairAnalysis> & results)
{
  if (results.empty()) {
    throw mei::NotFoundError("no agent pair matches --scenario/--pair");
  }
  if (results.size() > 1) {
    throw CLI::ValidationError("--pair", std::to_string(results.size()) + " pairs match; narrow with --scenario/--pair");
  }
  return results.front();
}

int cmd_frames(const Options & o, bool with_event)
{
  const auto cfg = make_config(o);
  Manifest manifest(with_event ? "case" : "frames", o, &cfg);
  Sink sink(o);
  const auto corpus = load_corpus(o, manifest);
  const auto results = mei::pipeline::analyze_corpus(corpus, cfg, make_selector(o), o.jobs, with_event);
  const auto & pa = single_pair(results);

  std::ostringstream frames;
  mei::tables::write_frames(frames, pa.frames, cfg);
  sink.write("frames.csv", frames.str(), manifest);
  if (with_event) {
    std::ostringstream ev;
    mei::tables::write_events(ev, std::span(&pa.event, 1));
    sink.write("event.csv", ev.str(), manifest, false);
  }
  manifest.count("frames", pa.frames.size());
  sink.finish(manifest);
  return kOk;
}

int cmd_events(const Options & o)
{
  const auto cfg = make_config(o);
  Manifest manifest("events", o, &cfg);
  Sink sink(o);
  const auto corpus = load_corpus(o, manifest);
  if (corpus.empty()) {
    std::cerr << "warning: input contains no scenarios\n";
  }
  const auto results = mei::pipeline::analyze_corpus(corpus, cfg, make_selector(o), o.jobs);
  std::vector<mei::classify::ConflictEvent> events;
  for (const auto & pa : results) {
    if (!o.positive_mei || mei::classify::has_positive_mei(pa.event)) {
      events.push_back(pa.event);
    }
  }
  std::ostringstream table;
  mei::tables::write_events(table, events);
  sink.write("events.csv", table.str(), manifest);

  std::size_t critical = 0;
  std::size_t potential = 0;
  std::size_t positive = 0;
  for (const auto & e : events) {
    positive += mei::classify::has_positive_mei(e) ? 1 : 0;
    critical += e.peak_level == mei::classify::RiskLevel::kCriticalConflict ? 1 : 0;
    potential += e.peak_level == mei::classify::RiskLevel::kPotentialConflict ? 1 : 0;
  }
  manifest.count("events", events.size());
  manifest.count("events_positive_mei", positive);
  manifest.count("critical", critical);
  manifest.count("potential", potential);
  sink.finish(manifest);
  return kOk;
}

int cmd_thresholds(const Options & o)
{
  Manifest manifest("thresholds", o, nullptr);
  Sink sink(o);
  std::vector<mei::classify::ConflictEvent> events;
  for (const auto & path : o.inputs) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw IoError("cannot open input '" + path + "'");
    }
    for (auto & e : mei::tables::read_events(in)) {
      if (o.all_events || mei::classify::has_positive_mei(e)) {
        events.push_back(std::move(e));
      }
    }
  }
  if (events.empty()) {
    throw EmptyInputError("no events to summarise");
  }
  const auto table = mei::stats::build_threshold_table(events);
  if (table.low_sample) {
    std::cerr << "warning: only " << table.event_count << " events; thresholds are low-sample\n";
  }
  std::vector<std::pair<mei::stats::Metric, mei::stats::Histogram>> hists;
  for (auto [m, w] : {std::pair{mei::stats::Metric::kMeiMax, o.bin_mei}, std::pair{mei::stats::Metric::kActMin, o.bin_act},
                      std::pair{mei::stats::Metric::kPet, o.bin_pet}}) {
    const auto values = mei::stats::metric_values(events, m);
    hists.emplace_back(m, mei::stats::histogram(values, w));
  }
  sink.write("thresholds.csv", mei::stats::threshold_table_csv(table), manifest);
  sink.write("report.json", mei::stats::threshold_report_json(table, hists), manifest, false);
  manifest.count("events", events.size());
  sink.finish(manifest);
  return kOk;
}

int cmd_filter_collisions(const Options & o)
{
  const auto cfg = make_config(o);
  Manifest manifest("filter-collisions", o, &cfg);
  Sink sink(o);
  auto corpus = load_corpus(o, manifest);
  const auto results = mei::pipeline::analyze_corpus(corpus, cfg, make_selector(o), o.jobs, false);

  std::vector<mei::classify::PairFrames> pairs;
  for (const auto & pa : results) {
    pairs.push_back({pa.key, pa.frames});
  }
  const std::size_t total = pairs.size();
  const auto filtered = mei::classify::filter_collisions(std::move(pairs));

  std::set<std::string> dropped;
  for (const auto & r : filtered.removed) {
    dropped.insert(r.key.scenario_id);
  }
  std::vector<mei::io::Scenario> cleaned;
  for (auto & sc : corpus) {
    if (!dropped.contains(sc.scenario_id)) {
      cleaned.push_back(std::move(sc));
    }
  }

  std::ostringstream report;
  mei::tables::write_removals(report, filtered.removed);
  std::ostringstream corpus_out;
  mei::io::write_canonical(corpus_out, cleaned);
  sink.write("removed.csv", report.str(), manifest);
  sink.write("cleaned.csv", corpus_out.str(), manifest, false);
  manifest.count("events", total);
  manifest.count("filtered", filtered.removed.size());
  manifest.count("scenarios_kept", cleaned.size());
  sink.finish(manifest);
  std::cerr << "removed " << filtered.removed.size() << " of " << total << " events\n";
  return kOk;
}

void add_input_options(CLI::App * sub, Options & o)
{
  sub->add_option("--input", o.inputs, "Input file(s)")->required()->check(CLI::ExistingFile);
  sub->add_option("--out", o.out, "Output directory (default: table on stdout)");
}

void add_metric_options(CLI::App * sub, Options & o)
{
  sub->add_option("--format", o.format, "Input layout")->check(CLI::IsMember({"canonical", "dataset"}));
  sub->add_option("--d-safe", o.d_safe, "Safety margin D_safe (m)")->capture_default_str();
  sub->add_option("--tem-star", o.tem_star, "Critical TEM threshold (s)")->capture_default_str();
  sub->add_option("--q", o.q, "Conflict gate predicate")->check(CLI::IsMember({"approach_distance", "always_true"}));
  sub->add_option("--pet-grid", o.pet_grid, "PET conflict-zone raster (m)")->capture_default_str();
  sub->add_option("--mei-cap", o.mei_cap, "Clamp reported MEI (m/s)");
  sub->add_option("--scenario", o.scenario, "Restrict to one scenario id");
  sub->add_option("--pair", o.pair, "Restrict to one agent pair A,B");
  sub->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Modified Emergency Index and companion criticality metrics"};
  app.set_version_flag("--version", MEI_VERSION);
  app.require_subcommand(1);
  Options o;

  auto * frames = app.add_subcommand("frames", "Per-frame metric table for one agent pair");
  auto * case_cmd = app.add_subcommand("case", "Per-frame table plus event summary for one agent pair");
  auto * events = app.add_subcommand("events", "One aggregate row per (scenario, agent pair)");
  auto * thresholds = app.add_subcommand("thresholds", "Percentile risk thresholds from an event table");
  auto * filter = app.add_subcommand("filter-collisions", "Drop events whose footprints ever overlap");

  for (auto * sub : {frames, case_cmd, events, filter}) {
    add_input_options(sub, o);
    add_metric_options(sub, o);
  }
  events->add_flag("--positive-mei", o.positive_mei, "Keep only events with MEI_max > 0");
  add_input_options(thresholds, o);
  thresholds->add_flag("--all-events", o.all_events, "Include events without a positive MEI_max");
  thresholds->add_option("--bin-mei", o.bin_mei, "MEI_max histogram bin (m/s)")->capture_default_str();
  thresholds->add_option("--bin-act", o.bin_act, "ACT_min histogram bin (s)")->capture_default_str();
  thresholds->add_option("--bin-pet", o.bin_pet, "PET histogram bin (s)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*frames) {
      return cmd_frames(o, false);
    }
    if (*case_cmd) {
      return cmd_frames(o, true);
    }
    if (*events) {
      return cmd_events(o);
    }
    if (*thresholds) {
      return cmd_thresholds(o);
    }
    if (*filter) {
      return cmd_filter_collisions(o);
    }
  } catch (const CLI::ValidationError & e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const mei::NotFoundError & e) {
    std::cerr << "not found: " << e.what() << '\n';
    return kNotFound;
  } catch (const mei::SchemaError & e) {
    std::cerr << "schema error: " << e.what() << '\n';
    return kSchema;
  } catch (const mei::UnsupportedFormatError & e) {
    std::cerr << "unsupported format: " << e.what() << '\n';
    return kSchema;
  } catch (const mei::RowError & e) {
    std::cerr << "schema error: " << e.what() << '\n';
    return kSchema;
  } catch (const EmptyInputError & e) {
    std::cerr << "empty input: " << e.what() << '\n';
    return kEmptyInput;
  } catch (const IoError & e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kIo;
  } catch (const mei::InputError & e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
