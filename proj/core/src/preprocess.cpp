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

#include "fragc/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fragc/error.hpp"

namespace fragc {

ModelInput::ModelInput(std::vector<double> values, std::int64_t source_frame_index)
    : values_(std::move(values)), source_frame_index_(source_frame_index) {
  if (values_.size() != kInputValues) {
    throw InvalidInput("model input must hold 224x224x3 values, got " + std::to_string(values_.size()));
  }
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) throw InvalidInput("model input value outside [0,1]");
  }
}

double ModelInput::mean() const noexcept {
  return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
}

ModelInput ModelInput::filled(double value, std::int64_t source_frame_index) {
  return ModelInput(std::vector<double>(kInputValues, value), source_frame_index);
}

Image resize_bilinear(const Image& src, int out_width, int out_height) {
  if (src.channels != 3) {
    throw InvalidInput("resize expects 3 channels, got " + std::to_string(src.channels));
  }
  if (src.width < 1 || src.height < 1 ||
      src.data.size() != static_cast<std::size_t>(src.width) * src.height * 3) {
    throw InvalidInput("resize: empty or inconsistent image");
  }
  if (out_width < 1 || out_height < 1) throw InvalidInput("resize: target must be at least 1x1");
  if (src.width == out_width && src.height == out_height) return src;

  struct Tap {
    int lo, hi;
    double w_hi;
  };
  auto taps = [](int in, int out) {
    std::vector<Tap> t(static_cast<std::size_t>(out));
    const double ratio = static_cast<double>(in) / out;
    for (int i = 0; i < out; ++i) {
      double s = (i + 0.5) * ratio - 0.5;
      s = std::clamp(s, 0.0, static_cast<double>(in - 1));
      const int lo = static_cast<int>(std::floor(s));
      const int hi = std::min(lo + 1, in - 1);
      t[static_cast<std::size_t>(i)] = {lo, hi, s - lo};
    }
    return t;
  };
  const auto xs = taps(src.width, out_width);
  const auto ys = taps(src.height, out_height);

  Image dst(out_width, out_height, 3);
  for (int y = 0; y < out_height; ++y) {
    const Tap& ty = ys[static_cast<std::size_t>(y)];
    for (int x = 0; x < out_width; ++x) {
      const Tap& tx = xs[static_cast<std::size_t>(x)];
      for (int c = 0; c < 3; ++c) {
        const double top = src.at(tx.lo, ty.lo, c) * (1.0 - tx.w_hi) + src.at(tx.hi, ty.lo, c) * tx.w_hi;
        const double bot = src.at(tx.lo, ty.hi, c) * (1.0 - tx.w_hi) + src.at(tx.hi, ty.hi, c) * tx.w_hi;
        const double v = top * (1.0 - ty.w_hi) + bot * ty.w_hi;
        dst.at(x, y, c) = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
      }
    }
  }
  return dst;
}

ModelInput normalize_pixels(const Image& image, std::int64_t source_frame_index) {
  if (image.width != kInputSide || image.height != kInputSide || image.channels != kInputChannels) {
    throw InvalidInput("normalize_pixels expects a 224x224x3 image");
  }
  std::vector<double> values(image.data.size());
  std::transform(image.data.begin(), image.data.end(), values.begin(),
                 [](std::uint8_t b) { return b / 255.0; });
  return ModelInput(std::move(values), source_frame_index);
}

ModelInput preprocess(const RawFrame& frame) {
  return normalize_pixels(resize(frame.image), frame.frame_index);
}

bool InputScaling::is_identity() const noexcept {
  return !bgr && scale == std::array<double, 3>{1.0, 1.0, 1.0} &&
         offset == std::array<double, 3>{0.0, 0.0, 0.0};
}

std::vector<float> to_tensor(const ModelInput& input, const InputScaling& scaling, TensorLayout layout) {
  const auto v = input.values();
  std::vector<float> out(v.size());
  constexpr std::size_t plane = static_cast<std::size_t>(kInputSide) * kInputSide;
  for (std::size_t px = 0; px < plane; ++px) {
    for (std::size_t c = 0; c < 3; ++c) {
      const std::size_t src_c = scaling.bgr ? 2 - c : c;
      const double x = v[px * 3 + src_c] * scaling.scale[c] + scaling.offset[c];
      const std::size_t dst = layout == TensorLayout::NHWC ? px * 3 + c : c * plane + px;
      out[dst] = static_cast<float>(x);
    }
  }
  return out;
}

}  // namespace fragc
