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
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "fragc/core.hpp"
#include "fragc/image.hpp"

namespace fragc::testing {

inline constexpr ActionClass K = ActionClass::Kill;
inline constexpr ActionClass D = ActionClass::Death;
inline constexpr ActionClass NA = ActionClass::NoAction;
inline constexpr ActionClass S = ActionClass::Smoke;

/// Gray level whose mean lands in the middle of the mock backend's bucket
/// for `c`: 32, 96, 160, 224.
std::uint8_t brightness_for(ActionClass c);

Image solid_image(int width, int height, std::uint8_t value);

/// Writes `<stem>_NNNNNN.png` files, `frames_per_label` frames per label,
/// each solid at brightness_for(label). Returns the number of files.
std::size_t write_label_frames(const std::filesystem::path& dir, const std::vector<ActionClass>& labels,
                               int frames_per_label = 30, int width = 64, int height = 36,
                               const std::string& stem = "frame");

/// The nine-second demo script: K D NA K D K D K D, one label per second.
std::vector<ActionClass> demo_labels();
/// The gated stream of the match-footage scenario (6 kills, 5 deaths).
std::vector<ActionClass> scenario_labels();

/// A FramePrediction with the given ensemble and label = its argmax.
FramePrediction prediction(std::int64_t frame_index, const std::array<double, kNumClasses>& p,
                           double threshold = kDefaultThreshold);
/// 0.97 on `c`, 0.01 elsewhere, gated.
FramePrediction confident(std::int64_t frame_index, ActionClass c);

/// Minimal ustar writer for building archive uploads in tests.
std::string make_tar(const std::vector<std::pair<std::string, std::string>>& members);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

/// Absolute path of tests/fixtures (set by CMake).
std::filesystem::path fixture_dir();
/// Path of the built fragc CLI (set by CMake).
std::filesystem::path cli_path();

}  // namespace fragc::testing
