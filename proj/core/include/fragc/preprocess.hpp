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
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fragc/image.hpp"
#include "fragc/ingest.hpp"

namespace fragc {

inline constexpr int kInputSide = 224;
inline constexpr int kInputChannels = 3;
inline constexpr std::size_t kInputValues =
    static_cast<std::size_t>(kInputSide) * kInputSide * kInputChannels;

/// 224x224x3 values in [0,1], HWC layout, RGB.
class ModelInput {
 public:
  /// Throws InvalidInput on a wrong element count or any value outside [0,1].
  ModelInput(std::vector<double> values, std::int64_t source_frame_index);

  std::span<const double> values() const noexcept { return values_; }
  std::int64_t source_frame_index() const noexcept { return source_frame_index_; }
  double mean() const noexcept;

  /// Constant-valued input, handy for tests and demos.
  static ModelInput filled(double value, std::int64_t source_frame_index = 0);

 private:
  std::vector<double> values_;
  std::int64_t source_frame_index_;
};

/// Bilinear resampling with pixel-centre alignment and edge clamping. The
/// aspect ratio is not preserved. Non-3-channel or empty input throws
/// InvalidInput. Same-size input is returned unchanged.
Image resize_bilinear(const Image& src, int out_width, int out_height);

inline Image resize(const Image& frame) { return resize_bilinear(frame, kInputSide, kInputSide); }

/// Divides every byte by 255. Requires a 224x224x3 image.
ModelInput normalize_pixels(const Image& image, std::int64_t source_frame_index = 0);

/// resize + normalize_pixels.
ModelInput preprocess(const RawFrame& frame);

/// Extra per-channel affine transform some backbones expect on top of the
/// [0,1] input: x' = x * scale[c] + offset[c], optionally swapping to BGR.
struct InputScaling {
  std::array<double, 3> scale{1.0, 1.0, 1.0};
  std::array<double, 3> offset{0.0, 0.0, 0.0};
  bool bgr = false;

  bool is_identity() const noexcept;
  friend bool operator==(const InputScaling&, const InputScaling&) = default;
};

enum class TensorLayout { NHWC, NCHW };

/// Float tensor for a model runtime, with the scaling applied.
std::vector<float> to_tensor(const ModelInput& input, const InputScaling& scaling, TensorLayout layout);

}  // namespace fragc
