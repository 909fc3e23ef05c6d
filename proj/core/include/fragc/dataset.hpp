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
#include "fragc/ingest.hpp"
#include "fragc/report.hpp"

namespace fragc {

struct DatasetEntry {
  /// Relative to the manifest root.
  std::filesystem::path path;
  ActionClass label = ActionClass::NoAction;
  std::int64_t frame_index = 0;

  friend bool operator==(const DatasetEntry&, const DatasetEntry&) = default;
};

struct DatasetManifest {
  std::filesystem::path root;
  std::vector<DatasetEntry> entries;

  std::string to_json(int indent = 2) const;
  /// Relative `root` values resolve against `base_dir`.
  static DatasetManifest from_json(std::string_view text, const std::filesystem::path& base_dir = {});

  void write(const std::filesystem::path& path) const;
  static DatasetManifest read(const std::filesystem::path& path);
};

/// File name used for a collected frame: `<class>_<NNNNNN>.png`.
std::string collected_file_name(ActionClass label, std::int64_t frame_index);

/// Writes every gated frame of `report` to `out_dir/<class>/` and a
/// `manifest.json` listing the placements. All four class directories are
/// created even when empty. `frames` must contain each gated frame by
/// frame_index. Write failures throw IoError naming the path.
DatasetManifest collect_dataset(const AnalysisReport& report, std::span<const RawFrame> frames,
                                const std::filesystem::path& out_dir);

/// Integer sizes for `n` items split by `ratios` using largest-remainder
/// rounding. Remainder ties go to the earlier split. Ratios must be
/// non-negative and sum to 1 within 1e-9 (InvalidInput otherwise).
std::array<std::size_t, 3> largest_remainder(std::size_t n, const std::array<double, 3>& ratios);

struct DatasetSplit {
  DatasetManifest train;
  DatasetManifest test;
  DatasetManifest validation;
};

/// Stratified seeded split into train/test/validation. Ratios must sum to
/// 1 within 1e-9 (InvalidInput otherwise). Output is independent of the
/// input entry order.
DatasetSplit split_dataset(const DatasetManifest& manifest, const std::array<double, 3>& ratios,
                           std::uint64_t seed);

}  // namespace fragc
