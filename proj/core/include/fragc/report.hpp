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

#include <array>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fragc/core.hpp"
#include "fragc/counter.hpp"

namespace fragc {

struct ConfigEcho {
  CounterConfig counter;
  std::vector<std::string> backends;
};

struct AnalysisReport {
  ActionCounts counts;
  /// One entry per sampled frame, gated or not, in frame order.
  std::vector<FramePrediction> per_frame;
  /// Counter steps for the gated frames only.
  CountTrace trace;
  ConfigEcho config;
  std::string input_digest;

  /// Whether the frame at `frame_index` incremented a count.
  bool counted(std::int64_t frame_index) const noexcept;
};

/// counts == count_events(gate(per_frame)) under the echoed config.
bool is_self_consistent(const AnalysisReport& report);

inline constexpr std::string_view kCsvHeader =
    "frame_index,timestamp_s,label_id,label_name,p_kill,p_death,p_noaction,p_smoke,gated,counted";

/// Streams per-frame CSV rows; probabilities carry 6 decimals, timestamps 3.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  void header();
  void row(const FramePrediction& frame, bool counted);

 private:
  std::ostream& out_;
};

std::string to_csv(const AnalysisReport& report);

struct CsvRow {
  std::int64_t frame_index = 0;
  double timestamp_s = 0.0;
  ActionClass label = ActionClass::NoAction;
  std::array<double, kNumClasses> probabilities{};
  bool gated = false;
  bool counted = false;
};

/// Parses text produced by to_csv. Throws InvalidInput on malformed input.
std::vector<CsvRow> parse_csv(std::string_view text);

/// Tally of the rows whose counted column is set.
ActionCounts counts_from_rows(std::span<const CsvRow> rows);

std::string report_to_json(const AnalysisReport& report, int indent = 2);

}  // namespace fragc
