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

#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>

#include "fragc/backend.hpp"
#include "fragc/counter.hpp"
#include "fragc/ingest.hpp"
#include "fragc/report.hpp"

namespace fragc {

/// Delivered as soon as a sampled frame has been classified, voted, gated
/// and (if gated) counted.
struct FrameEvent {
  const RawFrame& frame;
  const FramePrediction& prediction;
  bool counted;
};

struct AnalyzeOptions {
  DecoderConfig decoder;
  std::function<void(const FrameEvent&)> on_frame;
};

/// normalize_fps -> sample_frames -> preprocess -> classify (every backend)
/// -> majority_vote -> gate -> count_events, one sampled frame at a time.
///
/// A frame's label is the vote winner; its ensemble vector is the mean of
/// the backend outputs. Failures are rethrown as StageError naming the
/// stage ("ingest", "preprocess", "classify:<backend>", "ensemble",
/// "counter") and the sampled frame index where one applies.
AnalysisReport analyze(const FrameSourceSpec& source, std::span<const ClassifierPtr> backends,
                       const CounterConfig& cfg, const AnalyzeOptions& options = {});

/// Same pipeline over an already-open frame sequence.
AnalysisReport analyze_sequence(std::shared_ptr<const FrameSequence> frames, std::string input_digest,
                                std::span<const ClassifierPtr> backends, const CounterConfig& cfg,
                                const AnalyzeOptions& options = {});

/// Classifies one preprocessed frame with every backend and votes.
FramePrediction predict_frame(const ModelInput& input, std::span<const ClassifierPtr> backends,
                              double threshold);

}  // namespace fragc
