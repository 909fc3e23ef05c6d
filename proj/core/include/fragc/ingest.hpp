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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fragc/image.hpp"

namespace fragc {

/// Every stream is normalized to this rate before sampling.
inline constexpr int kStreamFps = 30;

enum class SourceKind { VideoFile, FrameDirectory };

struct FrameSourceSpec {
  SourceKind kind = SourceKind::FrameDirectory;
  std::filesystem::path path;
  int declared_fps = kStreamFps;
};

/// Rounds a measured rate such as 29.97 to the nearest integer. Rates that
/// round to zero or below throw InvalidInput.
int round_fps(double fps);

struct RawFrame {
  std::int64_t frame_index = 0;
  Image image;
};

// ---- temporal resampling ------------------------------------------------

/// Number of frames a source of `source_frames` at `source_fps` occupies once
/// resampled to 30 fps: ceil(source_frames * 30 / source_fps).
std::size_t resampled_length(std::size_t source_frames, int source_fps);

/// Source frame shown at output position `k` of the 30 fps stream. Nearest
/// neighbour in time; a target instant exactly between two source frames
/// takes the earlier one.
std::size_t resample_source_index(std::size_t k, int source_fps);

/// resample_source_index for every output position, clamped to the source.
std::vector<std::size_t> resample_schedule(std::size_t source_frames, int source_fps);

/// Materialized 30 fps stream. Output frames are re-indexed 0..len-1.
/// fps == 30 is an identity pass-through. fps <= 0 throws InvalidInput.
std::vector<RawFrame> normalize_fps(std::span<const RawFrame> source, int source_fps);

// ---- sampling -------------------------------------------------------------

constexpr bool is_sampled_index(std::int64_t frame_index) noexcept {
  return frame_index % kStreamFps == 0;
}

/// ceil(stream_len / 30).
constexpr std::size_t sampled_count(std::size_t stream_len) noexcept {
  return (stream_len + kStreamFps - 1) / kStreamFps;
}

/// Keeps frames whose index is a multiple of 30, in order.
std::vector<RawFrame> sample_frames(std::span<const RawFrame> stream);

// ---- frame sources --------------------------------------------------------

/// Lists `<stem>_<NNNNNN>.png` files in a directory ordered by the numeric
/// index. Other files are ignored. Throws IoError if the directory is missing.
std::vector<std::filesystem::path> list_frame_directory(const std::filesystem::path& dir);

/// Frame-index-addressed view over a source at its native rate.
class FrameSequence {
 public:
  virtual ~FrameSequence() = default;
  virtual std::size_t size() const = 0;
  virtual Image load(std::size_t i) const = 0;
  virtual int fps() const = 0;
  /// Hex SHA-256 over the underlying input bytes.
  virtual std::string digest() const = 0;
};

class DirectorySequence final : public FrameSequence {
 public:
  DirectorySequence(const std::filesystem::path& dir, int fps);

  std::size_t size() const override { return files_.size(); }
  Image load(std::size_t i) const override;
  int fps() const override { return fps_; }
  std::string digest() const override;

  const std::vector<std::filesystem::path>& files() const noexcept { return files_; }

 private:
  std::vector<std::filesystem::path> files_;
  int fps_;
};

class MemorySequence final : public FrameSequence {
 public:
  MemorySequence(std::vector<Image> frames, int fps);

  std::size_t size() const override { return frames_.size(); }
  Image load(std::size_t i) const override { return frames_.at(i); }
  int fps() const override { return fps_; }
  std::string digest() const override;

 private:
  std::vector<Image> frames_;
  int fps_;
};

/// Pull-based normalize_fps + sample_frames over a FrameSequence. Only the
/// source frames that survive sampling are ever loaded.
class SampledFrameStream {
 public:
  explicit SampledFrameStream(std::shared_ptr<const FrameSequence> source);

  std::size_t size() const noexcept { return count_; }
  std::optional<RawFrame> next();

 private:
  std::shared_ptr<const FrameSequence> source_;
  std::size_t stream_len_ = 0;
  std::size_t count_ = 0;
  std::size_t cursor_ = 0;
};

// ---- external decoder -----------------------------------------------------

/// External video decoder invoked as a subprocess. The program receives
/// ffmpeg-compatible arguments and must leave 30 fps frames in the frame
/// directory convention (`frame_%06d.png`, numbered from 0).
struct DecoderConfig {
  std::string program = "ffmpeg";

  /// Flag value, then $FRAGC_DECODER, then "ffmpeg".
  static DecoderConfig resolve(const std::optional<std::string>& flag);

  std::vector<std::string> command(const std::filesystem::path& input,
                                   const std::filesystem::path& out_dir) const;
};

/// Runs the decoder and waits. Non-zero exit or spawn failure throws IoError.
void run_decoder(const DecoderConfig& decoder, const std::filesystem::path& input,
                 const std::filesystem::path& out_dir);

/// Owns a freshly created directory and removes it on destruction.
class TempDir {
 public:
  explicit TempDir(std::string_view prefix = "fragc");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  TempDir(TempDir&& other) noexcept;
  TempDir& operator=(TempDir&& other) noexcept;

  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

/// A readable source. Video files are decoded up front into a temporary
/// directory that lives as long as this object.
struct OpenedSource {
  std::shared_ptr<const FrameSequence> frames;
  std::string input_digest;
  std::optional<TempDir> scratch;
};

OpenedSource open_source(const FrameSourceSpec& spec, const DecoderConfig& decoder);

}  // namespace fragc
