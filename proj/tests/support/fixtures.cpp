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

#include "fixtures.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fragc::testing {

std::uint8_t brightness_for(ActionClass c) {
  switch (c) {
    case ActionClass::Kill: return 32;
    case ActionClass::Death: return 96;
    case ActionClass::NoAction: return 160;
    case ActionClass::Smoke: return 224;
  }
  return 0;
}

Image solid_image(int width, int height, std::uint8_t value) { return Image(width, height, 3, value); }

std::size_t write_label_frames(const std::filesystem::path& dir, const std::vector<ActionClass>& labels,
                               int frames_per_label, int width, int height, const std::string& stem) {
  std::filesystem::create_directories(dir);
  std::size_t index = 0;
  for (ActionClass c : labels) {
    const Image img = solid_image(width, height, brightness_for(c));
    for (int i = 0; i < frames_per_label; ++i, ++index) {
      char name[64];
      std::snprintf(name, sizeof name, "_%06zu.png", index);
      write_png(dir / (stem + name), img);
    }
  }
  return index;
}

std::vector<ActionClass> demo_labels() { return {K, D, NA, K, D, K, D, K, D}; }

std::vector<ActionClass> scenario_labels() { return {K, D, D, K, D, K, D, K, D, K, K}; }

FramePrediction prediction(std::int64_t frame_index, const std::array<double, kNumClasses>& p,
                           double threshold) {
  FramePrediction f;
  f.frame_index = frame_index;
  f.timestamp_s = static_cast<double>(frame_index) / 30.0;
  f.ensemble = ProbabilityVector(p);
  f.label = f.ensemble.argmax();
  f.gated = f.ensemble.max() > threshold;
  return f;
}

FramePrediction confident(std::int64_t frame_index, ActionClass c) {
  std::array<double, kNumClasses> p{0.01, 0.01, 0.01, 0.01};
  p[index_of(c)] = 0.97;
  return prediction(frame_index, p);
}

std::string make_tar(const std::vector<std::pair<std::string, std::string>>& members) {
  std::string out;
  for (const auto& [name, data] : members) {
    char h[512];
    std::memset(h, 0, sizeof h);
    std::snprintf(h, 100, "%s", name.c_str());
    std::snprintf(h + 100, 8, "%07o", 0644);
    std::snprintf(h + 108, 8, "%07o", 0);
    std::snprintf(h + 116, 8, "%07o", 0);
    std::snprintf(h + 124, 12, "%011zo", data.size());
    std::snprintf(h + 136, 12, "%011o", 0);
    h[156] = '0';
    std::memcpy(h + 257, "ustar", 6);
    std::memcpy(h + 263, "00", 2);
    std::memset(h + 148, ' ', 8);
    unsigned sum = 0;
    for (unsigned char b : h) sum += b;
    std::snprintf(h + 148, 8, "%06o", sum);
    h[155] = ' ';
    out.append(h, sizeof h);
    out += data;
    out.append((512 - data.size() % 512) % 512, '\0');
  }
  out.append(1024, '\0');
  return out;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::filesystem::path fixture_dir() { return FRAGC_TEST_FIXTURES; }

std::filesystem::path cli_path() { return FRAGC_CLI_PATH; }

}  // namespace fragc::testing
