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

#include "fragc/metrics.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace fragc {

std::uint64_t ConfusionMatrix::row_sum(ActionClass truth) const noexcept {
  std::uint64_t s = 0;
  for (auto v : m_[index_of(truth)]) s += v;
  return s;
}

std::uint64_t ConfusionMatrix::column_sum(ActionClass predicted) const noexcept {
  std::uint64_t s = 0;
  for (const auto& row : m_) s += row[index_of(predicted)];
  return s;
}

std::uint64_t ConfusionMatrix::trace() const noexcept {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < kNumClasses; ++i) s += m_[i][i];
  return s;
}

std::uint64_t ConfusionMatrix::total() const noexcept {
  std::uint64_t s = 0;
  for (const auto& row : m_)
    for (auto v : row) s += v;
  return s;
}

ConfusionMatrix confusion(std::span<const LabeledPair> samples) {
  ConfusionMatrix m;
  for (const auto& s : samples) m.add(s.truth, s.predicted);
  return m;
}

double f1_score(double precision, double recall) noexcept {
  const double denom = precision + recall;
  return denom > 0.0 ? 2.0 * precision * recall / denom : 0.0;
}

EvalReport report(const ConfusionMatrix& matrix) {
  const auto total = matrix.total();
  if (total == 0) throw InvalidInput("report: confusion matrix is empty");

  EvalReport r;
  r.matrix = matrix;
  for (ActionClass c : kAllClasses) {
    auto& s = r.per_class[index_of(c)];
    const auto tp = static_cast<double>(matrix.at(c, c));
    const auto predicted = matrix.column_sum(c);
    const auto actual = matrix.row_sum(c);
    s.support = actual;
    s.precision_degenerate = predicted == 0;
    s.sensitivity_degenerate = actual == 0;
    s.precision = predicted == 0 ? 0.0 : tp / static_cast<double>(predicted);
    s.sensitivity = actual == 0 ? 0.0 : tp / static_cast<double>(actual);
    s.f1 = f1_score(s.precision, s.sensitivity);
  }
  r.accuracy = static_cast<double>(matrix.trace()) / static_cast<double>(total);
  return r;
}

std::vector<TaggedPair> parse_pairs_csv(std::string_view text) {
  std::vector<TaggedPair> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;

    std::vector<std::string> cols;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      const auto b = cell.find_first_not_of(" \t");
      const auto e = cell.find_last_not_of(" \t");
      cols.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
    }
    if (cols.size() < 2 || cols.size() > 3) {
      throw InvalidInput("pairs csv line " + std::to_string(line_no) + ": expected 2 or 3 columns");
    }
    try {
      TaggedPair p{cols.size() == 3 ? cols[2] : std::string(), {parse_class(cols[0]), parse_class(cols[1])}};
      out.push_back(std::move(p));
    } catch (const InvalidInput& e) {
      // The first line may be a header such as "true_label,predicted_label".
      if (line_no == 1 && out.empty()) continue;
      throw InvalidInput("pairs csv line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<TaggedPair> read_pairs_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_pairs_csv(ss.str());
}

std::string format_accuracy(double accuracy) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", accuracy);
  return buf;
}

std::string report_to_json(const EvalReport& r, int indent) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json per_class = nlohmann::ordered_json::object();
  for (ActionClass c : kAllClasses) {
    const auto& s = r[c];
    per_class[std::string(class_name(c))] = {
        {"precision", s.precision},
        {"sensitivity", s.sensitivity},
        {"f1", s.f1},
        {"support", s.support},
        {"precision_degenerate", s.precision_degenerate},
        {"sensitivity_degenerate", s.sensitivity_degenerate},
    };
  }
  j["per_class"] = per_class;
  j["accuracy"] = r.accuracy;
  j["accuracy_display"] = format_accuracy(r.accuracy);
  j["total"] = r.matrix.total();
  j["confusion_matrix"] = r.matrix.cells();
  return j.dump(indent);
}

std::string render_table(const EvalReport& r, std::string_view title) {
  std::ostringstream os;
  if (!title.empty()) os << title << '\n';
  char line[128];
  std::snprintf(line, sizeof line, "%-10s %9s %9s %11s %8s\n", "class", "precision", "f1", "sensitivity",
                "support");
  os << line;
  for (ActionClass c : kAllClasses) {
    const auto& s = r[c];
    std::snprintf(line, sizeof line, "%-10s %9.4f %9.4f %11.4f %8llu%s\n", std::string(class_name(c)).c_str(),
                  s.precision, s.f1, s.sensitivity, static_cast<unsigned long long>(s.support),
                  s.precision_degenerate || s.sensitivity_degenerate ? "  *" : "");
    os << line;
  }
  os << "accuracy   " << format_accuracy(r.accuracy) << "  (" << r.matrix.trace() << "/" << r.matrix.total()
     << ")\n";
  os << "confusion (rows = true, cols = predicted)\n";
  for (ActionClass t : kAllClasses) {
    std::snprintf(line, sizeof line, "  %-9s", std::string(class_name(t)).c_str());
    os << line;
    for (ActionClass p : kAllClasses) {
      std::snprintf(line, sizeof line, " %6llu", static_cast<unsigned long long>(r.matrix.at(t, p)));
      os << line;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace fragc
