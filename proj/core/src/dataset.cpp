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

#include "fragc/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <limits>
#include <sstream>
#include <tuple>

#include "fragc/error.hpp"
#include "json.hpp"

namespace fragc {
namespace {

using nlohmann::ordered_json;

// Unbiased draw in [0, n) from a 64-bit engine. std::uniform_int_distribution
// differs between standard libraries, which would break seeded splits.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

template <class T>
void seeded_shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[bounded(rng, i)]);
  }
}

}  // namespace

std::string DatasetManifest::to_json(int indent) const {
  ordered_json j;
  j["root"] = root.string();
  j["count"] = entries.size();
  ordered_json list = ordered_json::array();
  for (const auto& e : entries) {
    list.push_back({{"path", e.path.generic_string()},
                    {"label", std::string(class_name(e.label))},
                    {"label_id", wire_id(e.label)},
                    {"frame_index", e.frame_index}});
  }
  j["entries"] = list;
  return j.dump(indent);
}

DatasetManifest DatasetManifest::from_json(std::string_view text, const std::filesystem::path& base_dir) {
  DatasetManifest m;
  try {
    const auto j = ordered_json::parse(text);
    std::filesystem::path root = j.value("root", std::string());
    if (root.is_relative() && !base_dir.empty()) root = base_dir / root;
    m.root = root;
    for (const auto& e : j.at("entries")) {
      m.entries.push_back(DatasetEntry{e.at("path").get<std::string>(),
                                       from_wire_id(e.at("label_id").get<int>()),
                                       e.value("frame_index", std::int64_t{0})});
    }
  } catch (const ordered_json::exception& e) {
    throw InvalidInput(std::string("dataset manifest: ") + e.what());
  }
  return m;
}

void DatasetManifest::write(const std::filesystem::path& path) const {
  // Store the root relative to the manifest so the dataset can be moved.
  DatasetManifest copy = *this;
  std::error_code ec;
  if (!root.empty()) {
    auto rel = std::filesystem::proximate(root, path.parent_path().empty() ? "." : path.parent_path(), ec);
    if (!ec) copy.root = rel;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write manifest: " + path.string());
  out << copy.to_json() << '\n';
  if (!out) throw IoError("short write: " + path.string());
}

DatasetManifest DatasetManifest::read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str(), path.parent_path());
}

std::string collected_file_name(ActionClass label, std::int64_t frame_index) {
  char idx[32];
  std::snprintf(idx, sizeof idx, "%06lld", static_cast<long long>(frame_index));
  return std::string(class_name(label)) + "_" + idx + ".png";
}

DatasetManifest collect_dataset(const AnalysisReport& report, std::span<const RawFrame> frames,
                                const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  for (ActionClass c : kAllClasses) {
    const auto dir = out_dir / class_name(c);
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  }

  std::map<std::int64_t, const RawFrame*> by_index;
  for (const auto& f : frames) by_index[f.frame_index] = &f;

  DatasetManifest manifest;
  manifest.root = out_dir;
  for (const auto& p : report.per_frame) {
    if (!p.gated) continue;
    const auto it = by_index.find(p.frame_index);
    if (it == by_index.end()) {
      throw InvalidInput("collect_dataset: no image for gated frame " + std::to_string(p.frame_index));
    }
    const fs::path rel = fs::path(class_name(p.label)) / collected_file_name(p.label, p.frame_index);
    write_png(out_dir / rel, it->second->image);
    manifest.entries.push_back(DatasetEntry{rel, p.label, p.frame_index});
  }
  manifest.write(out_dir / "manifest.json");
  return manifest;
}

namespace {

void check_ratios(const std::array<double, 3>& ratios) {
  for (double r : ratios) {
    if (!(r >= 0.0)) throw InvalidInput("split ratios must be non-negative");
  }
  const double sum = ratios[0] + ratios[1] + ratios[2];
  if (std::abs(sum - 1.0) > 1e-9) {
    throw InvalidInput("split ratios must sum to 1, got " + std::to_string(sum));
  }
}

}  // namespace

std::array<std::size_t, 3> largest_remainder(std::size_t n, const std::array<double, 3>& ratios) {
  check_ratios(ratios);
  std::array<std::size_t, 3> out{};
  std::array<double, 3> frac{};
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double exact = static_cast<double>(n) * ratios[i];
    // Snap values within rounding noise of an integer so 0.7*100 is 70.
    const double snapped = std::abs(exact - std::round(exact)) < 1e-9 ? std::round(exact) : exact;
    out[i] = static_cast<std::size_t>(std::floor(snapped));
    frac[i] = snapped - std::floor(snapped);
    assigned += out[i];
  }
  std::array<std::size_t, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return frac[a] > frac[b] + 1e-9;
  });
  for (std::size_t k = 0; assigned < n; ++k, ++assigned) ++out[order[k % 3]];
  return out;
}

DatasetSplit split_dataset(const DatasetManifest& manifest, const std::array<double, 3>& ratios,
                           std::uint64_t seed) {
  check_ratios(ratios);
  DatasetSplit split;
  for (auto* part : {&split.train, &split.test, &split.validation}) part->root = manifest.root;

  std::mt19937_64 rng(seed);
  for (ActionClass c : kAllClasses) {
    std::vector<DatasetEntry> bucket;
    for (const auto& e : manifest.entries) {
      if (e.label == c) bucket.push_back(e);
    }
    std::sort(bucket.begin(), bucket.end(), [](const DatasetEntry& a, const DatasetEntry& b) {
      return std::tie(a.frame_index, a.path) < std::tie(b.frame_index, b.path);
    });
    seeded_shuffle(bucket, rng);

    const auto sizes = largest_remainder(bucket.size(), ratios);
    auto it = bucket.begin();
    for (auto [part, size] : {std::pair{&split.train, sizes[0]}, std::pair{&split.test, sizes[1]},
                              std::pair{&split.validation, sizes[2]}}) {
      part->entries.insert(part->entries.end(), it, it + static_cast<std::ptrdiff_t>(size));
      it += static_cast<std::ptrdiff_t>(size);
    }
  }
  return split;
}

}  // namespace fragc
