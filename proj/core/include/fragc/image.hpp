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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace fragc {

/// Interleaved 8-bit image, row-major, channels in RGB order.
struct Image {
  int width = 0;
  int height = 0;
  int channels = 3;
  std::vector<std::uint8_t> data;

  Image() = default;
  Image(int w, int h, int c = 3, std::uint8_t fill = 0)
      : width(w), height(h), channels(c),
        data(static_cast<std::size_t>(w) * h * c, fill) {}

  std::uint8_t& at(int x, int y, int ch) {
    return data[(static_cast<std::size_t>(y) * width + x) * channels + ch];
  }
  std::uint8_t at(int x, int y, int ch) const {
    return data[(static_cast<std::size_t>(y) * width + x) * channels + ch];
  }

  bool empty() const noexcept { return data.empty(); }

  friend bool operator==(const Image&, const Image&) = default;
};

/// Decodes any format the image codec understands into 3-channel RGB.
/// Throws IoError on unreadable files and InvalidInput on undecodable bytes.
Image read_image(const std::filesystem::path& path);
Image decode_image(std::span<const std::uint8_t> bytes);

/// PNG is lossless, so write_png followed by read_image is the identity.
void write_png(const std::filesystem::path& path, const Image& image);
std::vector<std::uint8_t> encode_png(const Image& image);

}  // namespace fragc
