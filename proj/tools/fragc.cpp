/*
 * Copyright 2026 The fragc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// fragc: command line front end for the action counting engine.

#include <algorithm>
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "fragc/backend.hpp"
#include "fragc/counter.hpp"
#include "fragc/dataset.hpp"
#include "fragc/error.hpp"
#include "fragc/metrics.hpp"
#include "fragc/pipeline.hpp"
#include "fragc/report.hpp"
#include "fragc/service.hpp"

namespace fs = std::filesystem;

namespace {

struct EngineFlags {
  std::vector<std::string> backends;
  bool demo = false;
  double threshold = fragc::kDefaultThreshold;
  std::string count_mode = "literal";
  std::optional<std::string> decoder;
  std::optional<std::string> model_dir;
  int fps = fragc::kStreamFps;

  void attach(CLI::App* app) {
    app->add_option("--backend", backends,
                    "Backend: 'mock', a manifest path, or a name under the model directory (repeatable)");
    app->add_flag("--demo", demo, "Use five mock backends instead of model artifacts");
    app->add_option("--threshold", threshold, "Confidence gate; frames need a top probability above this")
        ->check(CLI::Range(0.0, 1.0));
    app->add_option("--count-mode", count_mode, "literal | run_collapse | noaction_separated");
    app->add_option("--decoder", decoder, "Video decoder program (default $FRAGC_DECODER or ffmpeg)");
    app->add_option("--model-dir", model_dir, "Directory of <name>.manifest.json files (default $FRAGC_MODEL_DIR)");
    app->add_option("--fps", fps, "Declared frame rate of a frame directory input")->check(CLI::PositiveNumber);
  }

  fragc::CounterConfig counter() const {
    fragc::CounterConfig cfg{threshold, fragc::parse_count_mode(count_mode)};
    cfg.validate();
    return cfg;
  }

  std::vector<fragc::ClassifierPtr> load() const {
    if (demo) return fragc::demo_backends();
    const auto dir = model_dir ? std::optional<fs::path>(*model_dir) : fragc::model_dir_from_env();
    std::vector<fragc::ClassifierPtr> out;
    if (backends.empty()) {
      if (!dir) throw fragc::InvalidInput("no backends: pass --backend, --demo, or set FRAGC_MODEL_DIR");
      std::vector<fs::path> manifests;
      for (const auto& e : fs::directory_iterator(*dir)) {
        const auto name = e.path().filename().string();
        if (name.size() > 14 && name.ends_with(".manifest.json")) manifests.push_back(e.path());
      }
      std::sort(manifests.begin(), manifests.end());
      for (const auto& m : manifests) out.push_back(fragc::load_backend(fragc::read_manifest(m)));
      if (out.empty()) throw fragc::InvalidInput("no manifests found in " + dir->string());
      return out;
    }
    for (const auto& b : backends) out.push_back(fragc::resolve_backend(b, dir));
    return out;
  }

  fragc::FrameSourceSpec source(const std::string& input) const {
    fragc::FrameSourceSpec spec;
    spec.path = input;
    std::error_code ec;
    spec.kind = fs::is_directory(spec.path, ec) ? fragc::SourceKind::FrameDirectory : fragc::SourceKind::VideoFile;
    spec.declared_fps = spec.kind == fragc::SourceKind::FrameDirectory ? fps : fragc::kStreamFps;
    return spec;
  }
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw fragc::IoError("cannot write " + path.string());
  out << text;
}

void print_counts(const fragc::AnalysisReport& report) {
  std::cout << "frames sampled: " << report.per_frame.size() << "\n";
  std::cout << "gated frames:   " << report.trace.steps.size() << "\n";
  std::cout << "counts:         " << fragc::to_string(report.counts) << "\n";
}

int run_analyze(const EngineFlags& flags, const std::string& input, const std::optional<std::string>& csv_path,
                const std::optional<std::string>& json_path) {
  const auto backends = flags.load();
  fragc::AnalyzeOptions opts;
  opts.decoder = fragc::DecoderConfig::resolve(flags.decoder);

  std::ofstream csv;
  std::optional<fragc::CsvWriter> writer;
  if (csv_path) {
    csv.open(*csv_path, std::ios::binary);
    if (!csv) throw fragc::IoError("cannot write " + *csv_path);
    writer.emplace(csv);
    writer->header();
    // Rows go out as each sampled frame completes.
    opts.on_frame = [&](const fragc::FrameEvent& ev) {
      writer->row(ev.prediction, ev.counted);
      csv.flush();
    };
  }

  const auto report = fragc::analyze(flags.source(input), backends, flags.counter(), opts);
  if (json_path) write_text(*json_path, fragc::report_to_json(report) + "\n");
  print_counts(report);
  return 0;
}

int run_collect(const EngineFlags& flags, const std::string& input, const std::string& out_dir) {
  const auto backends = flags.load();
  fragc::AnalyzeOptions opts;
  opts.decoder = fragc::DecoderConfig::resolve(flags.decoder);
  std::vector<fragc::RawFrame> gated;
  opts.on_frame = [&](const fragc::FrameEvent& ev) {
    if (ev.prediction.gated) gated.push_back(ev.frame);
  };
  const auto report = fragc::analyze(flags.source(input), backends, flags.counter(), opts);
  const auto manifest = fragc::collect_dataset(report, gated, out_dir);
  print_counts(report);
  std::cout << "collected " << manifest.entries.size() << " frames into " << out_dir << "\n";
  return 0;
}

std::array<double, 3> parse_ratios(const std::string& text) {
  std::array<double, 3> r{};
  std::stringstream ss(text);
  std::string cell;
  std::size_t i = 0;
  while (std::getline(ss, cell, ',')) {
    if (i == 3) throw fragc::InvalidInput("--ratios takes exactly three values");
    try {
      r[i++] = std::stod(cell);
    } catch (const std::exception&) {
      throw fragc::InvalidInput("bad ratio '" + cell + "'");
    }
  }
  if (i != 3) throw fragc::InvalidInput("--ratios takes exactly three values");
  return r;
}

int run_split(const std::string& manifest_path, const std::string& ratios, std::uint64_t seed,
              const std::optional<std::string>& out_dir) {
  const auto manifest = fragc::DatasetManifest::read(manifest_path);
  const auto split = fragc::split_dataset(manifest, parse_ratios(ratios), seed);
  const fs::path in(manifest_path);
  const fs::path dir = out_dir ? fs::path(*out_dir) : in.parent_path();
  if (!dir.empty()) fs::create_directories(dir);
  const auto stem = in.stem().string();
  for (auto [part, name] : {std::pair{&split.train, "train"}, std::pair{&split.test, "test"},
                            std::pair{&split.validation, "val"}}) {
    const auto path = dir / (stem + "." + name + ".json");
    part->write(path);
    std::cout << name << ": " << part->entries.size() << " -> " << path.string() << "\n";
  }
  return 0;
}

int run_metrics(const std::string& pairs_path, const std::optional<std::string>& plot_path,
                const std::optional<std::string>& json_path) {
  const auto tagged = fragc::read_pairs_csv(pairs_path);
  std::map<std::string, std::vector<fragc::LabeledPair>> by_model;
  std::vector<fragc::LabeledPair> all;
  for (const auto& t : tagged) {
    by_model[t.model].push_back(t.pair);
    all.push_back(t.pair);
  }
  if (all.empty()) throw fragc::InvalidInput("no label pairs in " + pairs_path);
  const bool tagged_models = !(by_model.size() == 1 && by_model.begin()->first.empty());

  std::string json;
  std::vector<fragc::BarEntry> bars;
  if (tagged_models) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [model, pairs] : by_model) {
      const std::string label = model.empty() ? "(untagged)" : model;
      const auto r = fragc::report(fragc::confusion(pairs));
      std::cout << fragc::render_table(r, label) << "\n";
      bars.push_back({label, r.accuracy});
      j[label] = nlohmann::ordered_json::parse(fragc::report_to_json(r));
    }
    json = j.dump(2) + "\n";
  } else {
    const auto r = fragc::report(fragc::confusion(all));
    std::cout << fragc::render_table(r);
    bars.push_back({"model", r.accuracy});
    json = fragc::report_to_json(r) + "\n";
  }
  if (json_path) {
    write_text(*json_path, json);
  } else {
    std::cout << json;
  }
  if (plot_path) fragc::write_accuracy_chart(*plot_path, bars, "Accuracy by model");
  return 0;
}

fragc::Service* g_service = nullptr;

extern "C" void on_signal(int) {
  if (g_service != nullptr) g_service->stop();
}

int run_serve(const EngineFlags& flags, const std::string& host, std::optional<int> port,
              const std::string& collect_dir, std::size_t max_upload_mb) {
  fragc::ServiceConfig cfg;
  cfg.host = host;
  if (port) {
    cfg.port = *port;
  } else if (const char* env = std::getenv("FRAGC_PORT"); env != nullptr && *env != '\0') {
    cfg.port = std::stoi(env);
  }
  cfg.backends = flags.load();
  cfg.counter = flags.counter();
  cfg.decoder = fragc::DecoderConfig::resolve(flags.decoder);
  cfg.collect_dir = collect_dir;
  cfg.max_upload_bytes = max_upload_mb * 1024 * 1024;

  fragc::Service service(std::move(cfg));
  const int bound = service.bind();
  std::cerr << "fragc " << fragc::version() << " listening on " << host << ":" << bound << " with "
            << service.config().backends.size() << " backend(s)\n";
  g_service = &service;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  service.serve();
  g_service = nullptr;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fragc: gameplay action recognition and event counting"};
  app.set_version_flag("--version", std::string(fragc::version()));
  app.require_subcommand(1);

  EngineFlags analyze_flags;
  std::string analyze_input;
  std::optional<std::string> csv_out, json_out;
  auto* analyze = app.add_subcommand("analyze", "Count actions in a video or frame directory");
  analyze->add_option("input", analyze_input, "Video file or frame directory")->required();
  analyze->add_option("--csv", csv_out, "Per-frame CSV output");
  analyze->add_option("--json", json_out, "Full JSON report output");
  analyze_flags.attach(analyze);

  EngineFlags collect_flags;
  std::string collect_input, collect_out;
  auto* collect = app.add_subcommand("collect", "Analyze and sort gated frames into class folders");
  collect->add_option("input", collect_input, "Video file or frame directory")->required();
  collect->add_option("--out", collect_out, "Output dataset directory")->required();
  collect_flags.attach(collect);

  std::string split_manifest, split_ratios = "0.7,0.15,0.15";
  std::uint64_t split_seed = 0;
  std::optional<std::string> split_out;
  auto* split = app.add_subcommand("split", "Stratified train/test/validation split of a dataset manifest");
  split->add_option("manifest", split_manifest, "Dataset manifest JSON")->required();
  split->add_option("--ratios", split_ratios, "train,test,val ratios summing to 1");
  split->add_option("--seed", split_seed, "Shuffle seed");
  split->add_option("--out", split_out, "Output directory (default: next to the manifest)");

  std::string metrics_pairs;
  std::optional<std::string> metrics_plot, metrics_json;
  auto* metrics = app.add_subcommand("metrics", "Confusion matrix and per-class scores from label pairs");
  metrics->add_option("pairs", metrics_pairs, "CSV of true_label,predicted_label[,model]")->required();
  metrics->add_option("--plot", metrics_plot, "Write a per-model accuracy bar chart (PNG)");
  metrics->add_option("--json", metrics_json, "Write the report JSON here instead of stdout");

  EngineFlags serve_flags;
  std::string serve_host = "0.0.0.0", serve_collect = "collected";
  std::optional<int> serve_port;
  std::size_t serve_max_upload_mb = 512;
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--host", serve_host, "Listen address");
  serve->add_option("--port", serve_port, "Listen port (default $FRAGC_PORT or 8080)");
  serve->add_option("--collect-dir", serve_collect, "Where POST /collect writes frames");
  serve->add_option("--max-upload-mb", serve_max_upload_mb, "Upload size limit in MiB");
  serve_flags.attach(serve);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) return run_analyze(analyze_flags, analyze_input, csv_out, json_out);
    if (*collect) return run_collect(collect_flags, collect_input, collect_out);
    if (*split) return run_split(split_manifest, split_ratios, split_seed, split_out);
    if (*metrics) return run_metrics(metrics_pairs, metrics_plot, metrics_json);
    if (*serve) return run_serve(serve_flags, serve_host, serve_port, serve_collect, serve_max_upload_mb);
  } catch (const std::exception& e) {
    std::cerr << "fragc: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
