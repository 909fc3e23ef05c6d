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

#include "fragc/counter.hpp"

#include <string>

namespace fragc {

std::string_view to_string(CountMode mode) noexcept {
  switch (mode) {
    case CountMode::Literal: return "literal";
    case CountMode::RunCollapse: return "run_collapse";
    case CountMode::NoActionSeparated: return "noaction_separated";
  }
  return "unknown";
}

CountMode parse_count_mode(std::string_view text) {
  for (CountMode m : {CountMode::Literal, CountMode::RunCollapse, CountMode::NoActionSeparated}) {
    if (text == to_string(m)) return m;
  }
  throw InvalidInput("unknown count mode '" + std::string(text) +
                     "' (expected literal, run_collapse or noaction_separated)");
}

void CounterConfig::validate() const {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw InvalidInput("threshold must lie strictly between 0 and 1, got " + std::to_string(threshold));
  }
}

std::vector<FramePrediction> gate(std::span<const FramePrediction> frames, const CounterConfig& cfg) {
  cfg.validate();
  std::vector<FramePrediction> kept;
  for (const auto& f : frames) {
    if (passes_gate(f.ensemble, cfg.threshold)) kept.push_back(f);
  }
  return kept;
}

CountStep EventCounter::push(std::int64_t frame_index, ActionClass label) {
  CountStep step{frame_index, label, label, false};
  if (label == ActionClass::NoAction) {
    // Literal and RunCollapse look straight through NoAction.
    if (mode_ == CountMode::NoActionSeparated) previous_ = ActionClass::NoAction;
    return step;
  }
  if (label == previous_) {
    if (mode_ == CountMode::Literal) {
      step.label_after = ActionClass::NoAction;
      previous_ = ActionClass::NoAction;
    }
    return step;
  }
  counts_.increment(label);
  step.counted = true;
  previous_ = label;
  return step;
}

CountTrace count_events(std::span<const FramePrediction> gated, const CounterConfig& cfg) {
  EventCounter counter(cfg.mode);
  CountTrace trace;
  trace.steps.reserve(gated.size());
  for (const auto& f : gated) trace.steps.push_back(counter.push(f.frame_index, f.label));
  trace.final = counter.counts();
  return trace;
}

CountTrace count_labels(std::span<const ActionClass> labels, CountMode mode) {
  EventCounter counter(mode);
  CountTrace trace;
  trace.steps.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    trace.steps.push_back(counter.push(static_cast<std::int64_t>(i), labels[i]));
  }
  trace.final = counter.counts();
  return trace;
}

}  // namespace fragc
