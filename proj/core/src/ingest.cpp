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

#include "fragc/ingest.hpp"

#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <regex>

#include "fragc/digest.hpp"
#include "fragc/error.hpp"

extern char** environ;

namespace fragc {
namespace {

void require_fps(int fps) {
  if (fps <= 0) throw InvalidInput("frame rate must be positive, got " + std::to_string(fps));
}

}  // namespace

int round_fps(double fps) {
  if (!std::isfinite(fps)) throw InvalidInput("frame rate is not finite");
  const long r = std::lround(fps);
  if (r <= 0) throw InvalidInput("frame rate must be positive, got " + std::to_string(fps));
  return static_cast<int>(r);
}

std::size_t resampled_length(std::size_t source_frames, int source_fps) {
  require_fps(source_fps);
  const auto fps = static_cast<std::size_t>(source_fps);
  return (source_frames * kStreamFps + fps - 1) / fps;
}

std::size_t resample_source_index(std::size_t k, int source_fps) {
  require_fps(source_fps);
  // ceil(k*fps/30 - 1/2) in integers: ties go to the earlier source frame.
  return (2 * k * static_cast<std::size_t>(source_fps) + kStreamFps - 1) / (2 * kStreamFps);
}

std::vector<std::size_t> resample_schedule(std::size_t source_frames, int source_fps) {
  const std::size_t len = resampled_length(source_frames, source_fps);
  std::vector<std::size_t> out(len);
  for (std::size_t k = 0; k < len; ++k) {
    out[k] = std::min(resample_source_index(k, source_fps), source_frames - 1);
  }
  return out;
}

std::vector<RawFrame> normalize_fps(std::span<const RawFrame> source, int source_fps) {
  require_fps(source_fps);
  if (source_fps == kStreamFps) return {source.begin(), source.end()};
  std::vector<RawFrame> out;
  const auto schedule = resample_schedule(source.size(), source_fps);
  out.reserve(schedule.size());
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    out.push_back(RawFrame{static_cast<std::int64_t>(k), source[schedule[k]].image});
  }
  return out;
}

std::vector<RawFrame> sample_frames(std::span<const RawFrame> stream) {
  std::vector<RawFrame> out;
  out.reserve(sampled_count(stream.size()));
  for (const auto& f : stream) {
    if (is_sampled_index(f.frame_index)) out.push_back(f);
  }
  return out;
}

std::vector<std::filesystem::path> list_frame_directory(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError("not a frame directory: " + dir.string());

  static const std::regex kPattern(R"(^(.+)_(\d{6})\.png$)");
  std::vector<std::pair<long, fs::path>> found;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    std::smatch m;
    if (std::regex_match(name, m, kPattern)) found.emplace_back(std::stol(m[2].str()), entry.path());
  }
  if (ec) throw IoError("cannot list " + dir.string() + ": " + ec.message());
  std::sort(found.begin(), found.end());
  std::vector<fs::path> out;
  out.reserve(found.size());
  for (auto& [idx, p] : found) out.push_back(std::move(p));
  return out;
}

DirectorySequence::DirectorySequence(const std::filesystem::path& dir, int fps)
    : files_(list_frame_directory(dir)), fps_(fps) {
  require_fps(fps);
}

Image DirectorySequence::load(std::size_t i) const { return read_image(files_.at(i)); }

std::string DirectorySequence::digest() const {
  Sha256 h;
  for (const auto& f : files_) h.update_file(f);
  return h.hex_digest();
}

MemorySequence::MemorySequence(std::vector<Image> frames, int fps)
    : frames_(std::move(frames)), fps_(fps) {
  require_fps(fps);
}

std::string MemorySequence::digest() const {
  Sha256 h;
  for (const auto& f : frames_) {
    const std::string dims = std::to_string(f.width) + "x" + std::to_string(f.height) + "x" +
                             std::to_string(f.channels) + ";";
    h.update(dims);
    h.update(f.data);
  }
  return h.hex_digest();
}

SampledFrameStream::SampledFrameStream(std::shared_ptr<const FrameSequence> source)
    : source_(std::move(source)) {
  stream_len_ = resampled_length(source_->size(), source_->fps());
  count_ = sampled_count(stream_len_);
}

std::optional<RawFrame> SampledFrameStream::next() {
  if (cursor_ >= count_) return std::nullopt;
  const std::size_t k = cursor_ * kStreamFps;
  const std::size_t src = std::min(resample_source_index(k, source_->fps()), source_->size() - 1);
  ++cursor_;
  return RawFrame{static_cast<std::int64_t>(k), source_->load(src)};
}

DecoderConfig DecoderConfig::resolve(const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) return {*flag};
  if (const char* env = std::getenv("FRAGC_DECODER"); env != nullptr && *env != '\0') return {env};
  return {};
}

std::vector<std::string> DecoderConfig::command(const std::filesystem::path& input,
                                                const std::filesystem::path& out_dir) const {
  return {program,       "-hide_banner", "-loglevel",   "error",
          "-nostdin",    "-i",           input.string(), "-vf",
          "fps=30",      "-start_number", "0",          (out_dir / "frame_%06d.png").string()};
}

void run_decoder(const DecoderConfig& decoder, const std::filesystem::path& input,
                 const std::filesystem::path& out_dir) {
  const auto args = decoder.command(input, out_dir);
  std::vector<char*> argv;
  for (const auto& a : args) argv.push_back(const_cast<char*>(a.c_str()));
  argv.push_back(nullptr);

  pid_t pid = 0;
  const int rc = posix_spawnp(&pid, argv[0], nullptr, nullptr, argv.data(), environ);
  if (rc != 0) {
    throw IoError("cannot start decoder '" + decoder.program + "': " + std::strerror(rc));
  }
  int status = 0;
  while (waitpid(pid, &status, 0) < 0) {
    if (errno != EINTR) throw IoError("waiting for decoder failed");
  }
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    throw IoError("decoder '" + decoder.program + "' failed on " + input.string());
  }
}

TempDir::TempDir(std::string_view prefix) {
  std::string tmpl = (std::filesystem::temp_directory_path() / (std::string(prefix) + "-XXXXXX")).string();
  if (mkdtemp(tmpl.data()) == nullptr) throw IoError("cannot create temporary directory");
  path_ = tmpl;
}

TempDir::~TempDir() {
  if (!path_.empty()) {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
}

TempDir::TempDir(TempDir&& other) noexcept : path_(std::exchange(other.path_, {})) {}

TempDir& TempDir::operator=(TempDir&& other) noexcept {
  if (this != &other) {
    if (!path_.empty()) {
      std::error_code ec;
      std::filesystem::remove_all(path_, ec);
    }
    path_ = std::exchange(other.path_, {});
  }
  return *this;
}

OpenedSource open_source(const FrameSourceSpec& spec, const DecoderConfig& decoder) {
  require_fps(spec.declared_fps);
  OpenedSource out;
  if (spec.kind == SourceKind::FrameDirectory) {
    auto seq = std::make_shared<DirectorySequence>(spec.path, spec.declared_fps);
    out.input_digest = seq->digest();
    out.frames = std::move(seq);
    return out;
  }
  std::error_code ec;
  if (!std::filesystem::is_regular_file(spec.path, ec)) {
    throw IoError("video file not readable: " + spec.path.string());
  }
  out.input_digest = sha256_file(spec.path);
  out.scratch.emplace("fragc-decode");
  run_decoder(decoder, spec.path, out.scratch->path());
  out.frames = std::make_shared<DirectorySequence>(out.scratch->path(), kStreamFps);
  return out;
}

}  // namespace fragc
