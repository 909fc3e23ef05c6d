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

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "fragc/core.hpp"

namespace fragc {

/// How repeated labels collapse into events.
///
///  - Literal: walk the gated list skipping NoAction; a label equal to the
///    previous element's effective label is rewritten to NoAction and not
///    counted, anything else is counted. Because the rewrite becomes the new
///    "previous", a run of three identical labels counts twice.
///  - RunCollapse: each maximal run of one label counts once; NoAction
///    elements are transparent.
///  - NoActionSeparated: like RunCollapse, but a NoAction element ends the
///    current run.
enum class CountMode { Literal, RunCollapse, NoActionSeparated };

std::string_view to_string(CountMode mode) noexcept;
/// "literal", "run_collapse" or "noaction_separated"; InvalidInput otherwise.
CountMode parse_count_mode(std::string_view text);

struct CounterConfig {
  double threshold = kDefaultThreshold;
  CountMode mode = CountMode::Literal;

  /// Throws InvalidInput unless 0 < threshold < 1.
  void validate() const;
  friend bool operator==(const CounterConfig&, const CounterConfig&) = default;
};

/// Strictly greater than the threshold; a top probability equal to the
/// threshold is dropped.
inline bool passes_gate(const ProbabilityVector& p, double threshold) noexcept {
  return p.max() > threshold;
}

/// Frames whose top ensemble probability exceeds cfg.threshold, in order.
std::vector<FramePrediction> gate(std::span<const FramePrediction> frames, const CounterConfig& cfg);

struct CountStep {
  std::int64_t frame_index = 0;
  ActionClass label_before = ActionClass::NoAction;
  ActionClass label_after = ActionClass::NoAction;
  bool counted = false;

  friend bool operator==(const CountStep&, const CountStep&) = default;
};

struct CountTrace {
  std::vector<CountStep> steps;
  ActionCounts final;
};

/// Streaming form of count_events: one instance per stream, fed in order.
class EventCounter {
 public:
  explicit EventCounter(CountMode mode = CountMode::Literal) : mode_(mode) {}

  CountStep push(std::int64_t frame_index, ActionClass label);
  const ActionCounts& counts() const noexcept { return counts_; }
  CountMode mode() const noexcept { return mode_; }

 private:
  CountMode mode_;
  ActionClass previous_ = ActionClass::NoAction;
  ActionCounts counts_;
};

/// Folds an already-gated list through a fresh EventCounter.
CountTrace count_events(std::span<const FramePrediction> gated, const CounterConfig& cfg);

/// Same fold over bare labels; frame indices are the positions.
CountTrace count_labels(std::span<const ActionClass> labels, CountMode mode);

}  // namespace fragc
