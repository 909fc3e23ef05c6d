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

#include "fragc/pipeline.hpp"

#include "fragc/ensemble.hpp"
#include "fragc/error.hpp"

namespace fragc {
namespace {

template <class Fn>
auto in_stage(const std::string& stage, std::optional<std::int64_t> frame, Fn&& fn) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, frame, e.what());
  }
}

}  // namespace

FramePrediction predict_frame(const ModelInput& input, std::span<const ClassifierPtr> backends,
                              double threshold) {
  const std::int64_t idx = input.source_frame_index();
  FramePrediction fp;
  fp.frame_index = idx;
  fp.timestamp_s = static_cast<double>(idx) / kStreamFps;
  fp.per_model.reserve(backends.size());
  for (const auto& b : backends) {
    auto p = in_stage("classify:" + b->name(), idx, [&] { return b->classify(input); });
    fp.per_model.push_back(ModelScore{b->name(), p});
  }
  const auto vote = in_stage("ensemble", idx, [&] { return majority_vote(fp.per_model); });
  fp.ensemble = vote.ensemble;
  fp.label = vote.winner;
  fp.gated = passes_gate(fp.ensemble, threshold);
  return fp;
}

AnalysisReport analyze_sequence(std::shared_ptr<const FrameSequence> frames, std::string input_digest,
                                std::span<const ClassifierPtr> backends, const CounterConfig& cfg,
                                const AnalyzeOptions& options) {
  if (backends.empty()) throw InvalidInput("analyze: no backends");
  cfg.validate();

  AnalysisReport report;
  report.config.counter = cfg;
  for (const auto& b : backends) report.config.backends.push_back(b->name());
  report.input_digest = std::move(input_digest);

  SampledFrameStream stream = in_stage("ingest", std::nullopt, [&] { return SampledFrameStream(frames); });
  report.per_frame.reserve(stream.size());
  EventCounter counter(cfg.mode);

  for (std::size_t i = 0; i < stream.size(); ++i) {
    const auto expected = static_cast<std::int64_t>(i * kStreamFps);
    RawFrame raw = in_stage("ingest", expected, [&] { return *stream.next(); });
    const ModelInput input = in_stage("preprocess", raw.frame_index, [&] { return preprocess(raw); });
    FramePrediction fp = predict_frame(input, backends, cfg.threshold);

    bool counted = false;
    if (fp.gated) {
      const auto step = in_stage("counter", fp.frame_index, [&] { return counter.push(fp.frame_index, fp.label); });
      counted = step.counted;
      report.trace.steps.push_back(step);
    }
    report.per_frame.push_back(std::move(fp));
    if (options.on_frame) options.on_frame(FrameEvent{raw, report.per_frame.back(), counted});
  }
  report.counts = counter.counts();
  report.trace.final = report.counts;
  return report;
}

AnalysisReport analyze(const FrameSourceSpec& source, std::span<const ClassifierPtr> backends,
                       const CounterConfig& cfg, const AnalyzeOptions& options) {
  if (backends.empty()) throw InvalidInput("analyze: no backends");
  cfg.validate();
  OpenedSource opened = in_stage("ingest", std::nullopt, [&] { return open_source(source, options.decoder); });
  return analyze_sequence(opened.frames, std::move(opened.input_digest), backends, cfg, options);
}

}  // namespace fragc
