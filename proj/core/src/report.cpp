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

#include "fragc/report.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace fragc {

bool AnalysisReport::counted(std::int64_t frame_index) const noexcept {
  return std::any_of(trace.steps.begin(), trace.steps.end(),
                     [&](const CountStep& s) { return s.frame_index == frame_index && s.counted; });
}

bool is_self_consistent(const AnalysisReport& report) {
  const auto recount = count_events(gate(report.per_frame, report.config.counter), report.config.counter);
  return recount.final == report.counts && recount.steps == report.trace.steps;
}

void CsvWriter::header() { out_ << kCsvHeader << '\n'; }

void CsvWriter::row(const FramePrediction& f, bool counted) {
  const auto& p = f.ensemble.values();
  char buf[256];
  std::snprintf(buf, sizeof buf, "%lld,%.3f,%d,%s,%.6f,%.6f,%.6f,%.6f,%d,%d\n",
                static_cast<long long>(f.frame_index), f.timestamp_s, wire_id(f.label),
                std::string(class_name(f.label)).c_str(), p[0], p[1], p[2], p[3], f.gated ? 1 : 0,
                counted ? 1 : 0);
  out_ << buf;
}

std::string to_csv(const AnalysisReport& report) {
  std::ostringstream os;
  CsvWriter w(os);
  w.header();
  auto step = report.trace.steps.begin();
  for (const auto& f : report.per_frame) {
    bool counted = false;
    if (f.gated && step != report.trace.steps.end() && step->frame_index == f.frame_index) {
      counted = step->counted;
      ++step;
    }
    w.row(f, counted);
  }
  return os.str();
}

namespace {

template <class T>
T parse_number(const std::string& cell, std::size_t line_no) {
  T v{};
  const auto* end = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(cell.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw InvalidInput("csv line " + std::to_string(line_no) + ": bad number '" + cell + "'");
  }
  return v;
}

bool parse_flag(const std::string& cell, std::size_t line_no) {
  if (cell == "1") return true;
  if (cell == "0") return false;
  throw InvalidInput("csv line " + std::to_string(line_no) + ": expected 0 or 1, got '" + cell + "'");
}

}  // namespace

std::vector<CsvRow> parse_csv(std::string_view text) {
  std::vector<CsvRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != kCsvHeader) throw InvalidInput("csv: unexpected header '" + line + "'");
      continue;
    }
    std::vector<std::string> cols;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cols.push_back(cell);
    if (cols.size() != 10) {
      throw InvalidInput("csv line " + std::to_string(line_no) + ": expected 10 columns, got " +
                         std::to_string(cols.size()));
    }
    CsvRow r;
    r.frame_index = parse_number<std::int64_t>(cols[0], line_no);
    r.timestamp_s = parse_number<double>(cols[1], line_no);
    r.label = from_wire_id(parse_number<int>(cols[2], line_no));
    if (parse_class(cols[3]) != r.label) {
      throw InvalidInput("csv line " + std::to_string(line_no) + ": label_id and label_name disagree");
    }
    for (std::size_t i = 0; i < kNumClasses; ++i) r.probabilities[i] = parse_number<double>(cols[4 + i], line_no);
    r.gated = parse_flag(cols[8], line_no);
    r.counted = parse_flag(cols[9], line_no);
    rows.push_back(r);
  }
  return rows;
}

ActionCounts counts_from_rows(std::span<const CsvRow> rows) {
  ActionCounts c;
  for (const auto& r : rows) {
    if (r.counted) c.increment(r.label);
  }
  return c;
}

std::string report_to_json(const AnalysisReport& report, int indent) {
  using nlohmann::ordered_json;
  ordered_json j;
  ordered_json counts = ordered_json::object();
  for (auto [c, n] : report.counts.nonzero()) counts[std::string(class_name(c))] = n;
  j["counts"] = counts;
  j["config"] = {{"threshold", report.config.counter.threshold},
                 {"count_mode", std::string(to_string(report.config.counter.mode))},
                 {"backends", report.config.backends}};
  j["input_digest"] = report.input_digest;

  ordered_json frames = ordered_json::array();
  auto step = report.trace.steps.begin();
  for (const auto& f : report.per_frame) {
    bool counted = false;
    if (f.gated && step != report.trace.steps.end() && step->frame_index == f.frame_index) {
      counted = step->counted;
      ++step;
    }
    ordered_json per_model = ordered_json::array();
    for (const auto& m : f.per_model) {
      per_model.push_back({{"model", m.model_name}, {"probabilities", m.probabilities.values()}});
    }
    frames.push_back({{"frame_index", f.frame_index},
                      {"timestamp_s", f.timestamp_s},
                      {"label", std::string(class_name(f.label))},
                      {"label_id", wire_id(f.label)},
                      {"ensemble", f.ensemble.values()},
                      {"gated", f.gated},
                      {"counted", counted},
                      {"per_model", per_model}});
  }
  j["frames"] = frames;
  return j.dump(indent);
}

}  // namespace fragc
