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
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "fragc/core.hpp"

namespace fragc {

struct LabeledPair {
  ActionClass truth;
  ActionClass predicted;
};

/// Rows are the true class, columns the predicted class, both by wire id.
class ConfusionMatrix {
 public:
  using Cells = std::array<std::array<std::uint64_t, kNumClasses>, kNumClasses>;

  ConfusionMatrix() = default;
  explicit ConfusionMatrix(const Cells& cells) : m_(cells) {}

  void add(ActionClass truth, ActionClass predicted, std::uint64_t n = 1) noexcept {
    m_[index_of(truth)][index_of(predicted)] += n;
  }

  std::uint64_t at(ActionClass truth, ActionClass predicted) const noexcept {
    return m_[index_of(truth)][index_of(predicted)];
  }
  const Cells& cells() const noexcept { return m_; }

  std::uint64_t row_sum(ActionClass truth) const noexcept;
  std::uint64_t column_sum(ActionClass predicted) const noexcept;
  std::uint64_t trace() const noexcept;
  std::uint64_t total() const noexcept;

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

 private:
  Cells m_{};
};

ConfusionMatrix confusion(std::span<const LabeledPair> samples);

/// Harmonic mean of precision and recall; 0 when both are 0.
double f1_score(double precision, double recall) noexcept;

struct ClassScores {
  double precision = 0.0;
  double sensitivity = 0.0;  // recall
  double f1 = 0.0;
  std::uint64_t support = 0;  // row sum
  /// No predictions of this class: precision reported as 0.
  bool precision_degenerate = false;
  /// No true samples of this class: sensitivity reported as 0.
  bool sensitivity_degenerate = false;
};

struct EvalReport {
  std::array<ClassScores, kNumClasses> per_class{};
  double accuracy = 0.0;
  ConfusionMatrix matrix;

  const ClassScores& operator[](ActionClass c) const noexcept { return per_class[index_of(c)]; }
};

/// Throws InvalidInput on an empty matrix.
EvalReport report(const ConfusionMatrix& matrix);

/// Model-tagged pair as read from a metrics CSV. The model column is
/// optional in the file; untagged rows get an empty name.
struct TaggedPair {
  std::string model;
  LabeledPair pair;
};

/// Reads `true_label,predicted_label[,model]` rows. A header row is
/// detected and skipped. Labels may be wire ids or class names.
std::vector<TaggedPair> read_pairs_csv(const std::filesystem::path& path);
std::vector<TaggedPair> parse_pairs_csv(std::string_view text);

/// Accuracy with 4 decimal places, e.g. "0.9259".
std::string format_accuracy(double accuracy);

std::string report_to_json(const EvalReport& r, int indent = 2);

/// Fixed-width text table: one line per class plus an accuracy footer.
std::string render_table(const EvalReport& r, std::string_view title = {});

struct BarEntry {
  std::string label;
  double value = 0.0;  // in [0,1]
};

/// Bar chart of per-model accuracy written as PNG.
void write_accuracy_chart(const std::filesystem::path& path, std::span<const BarEntry> bars,
                          std::string_view title = "Accuracy");

}  // namespace fragc
