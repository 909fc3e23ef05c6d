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

#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "fragc/digest.hpp"
#include "fragc/error.hpp"
#include "fragc/ingest.hpp"
#include "oracles.hpp"

using namespace fragc;
using namespace fragc::testing;

namespace {

std::vector<RawFrame> numbered_frames(std::size_t n) {
  std::vector<RawFrame> out;
  for (std::size_t i = 0; i < n; ++i) {
    // 1x1 image whose pixel encodes the source index.
    Image img(1, 1, 3);
    img.data = {static_cast<std::uint8_t>(i & 0xff), static_cast<std::uint8_t>((i >> 8) & 0xff), 0};
    out.push_back(RawFrame{static_cast<std::int64_t>(i), img});
  }
  return out;
}

std::size_t source_of(const RawFrame& f) { return f.image.data[0] | (f.image.data[1] << 8); }

}  // namespace

TEST(Resample, ThirtyIsIdentity) {
  const auto src = numbered_frames(300);
  const auto out = normalize_fps(src, 30);
  ASSERT_EQ(out.size(), 300u);
  for (std::size_t i = 0; i < out.size(); ++i) {
    EXPECT_EQ(out[i].frame_index, static_cast<std::int64_t>(i));
    EXPECT_EQ(out[i].image, src[i].image);
  }
}

TEST(Resample, SixtyTakesEverySecondFrame) {
  const auto out = normalize_fps(numbered_frames(600), 60);
  ASSERT_EQ(out.size(), 300u);
  for (std::size_t k = 0; k < out.size(); ++k) {
    EXPECT_EQ(source_of(out[k]), 2 * k);
    EXPECT_EQ(source_of(out[k]), oracle::nearest_source(k, 60));
  }
}

TEST(Resample, FifteenEmitsEachFrameTwice) {
  const auto out = normalize_fps(numbered_frames(150), 15);
  ASSERT_EQ(out.size(), 300u);
  for (std::size_t k = 0; k < out.size(); ++k) {
    EXPECT_EQ(source_of(out[k]), k / 2);
    EXPECT_EQ(out[k].frame_index, static_cast<std::int64_t>(k));
  }
}

TEST(Resample, ScheduleMatchesOracleForManyRates) {
  for (int fps : {1, 7, 12, 24, 25, 29, 31, 48, 50, 59, 60, 90, 120, 144, 240}) {
    for (std::size_t n : {0u, 1u, 2u, 13u, 100u, 997u}) {
      const auto sched = resample_schedule(n, fps);
      const std::size_t expected_len = (n * 30 + static_cast<std::size_t>(fps) - 1) / fps;
      ASSERT_EQ(sched.size(), expected_len) << fps << " fps, " << n << " frames";
      ASSERT_EQ(resampled_length(n, fps), expected_len);
      for (std::size_t k = 0; k < sched.size(); ++k) {
        ASSERT_EQ(sched[k], std::min(oracle::nearest_source(k, fps), n - 1)) << fps << " fps, k=" << k;
      }
    }
  }
}

TEST(Resample, RejectsNonPositiveFps) {
  const auto src = numbered_frames(3);
  EXPECT_THROW(normalize_fps(src, 0), InvalidInput);
  EXPECT_THROW(normalize_fps(src, -30), InvalidInput);
  EXPECT_THROW(resample_schedule(3, 0), InvalidInput);
}

TEST(Resample, NonIntegerRatesRoundToNearest) {
  EXPECT_EQ(round_fps(29.97), 30);
  EXPECT_EQ(round_fps(59.94), 60);
  EXPECT_EQ(round_fps(23.976), 24);
  EXPECT_THROW(round_fps(0.2), InvalidInput);
  EXPECT_THROW(round_fps(-1.0), InvalidInput);
}

TEST(Sampling, Examples) {
  auto idx = [](const std::vector<RawFrame>& frames) {
    std::vector<std::int64_t> out;
    for (const auto& f : frames) out.push_back(f.frame_index);
    return out;
  };
  EXPECT_EQ(idx(sample_frames(numbered_frames(90))), (std::vector<std::int64_t>{0, 30, 60}));
  EXPECT_EQ(idx(sample_frames(numbered_frames(29))), (std::vector<std::int64_t>{0}));
  EXPECT_TRUE(sample_frames(numbered_frames(0)).empty());
}

TEST(Sampling, ShortClipsGiveTwoToFiveFrames) {
  for (int seconds = 2; seconds <= 5; ++seconds) {
    EXPECT_EQ(sample_frames(numbered_frames(static_cast<std::size_t>(seconds) * 30)).size(),
              static_cast<std::size_t>(seconds));
  }
}

TEST(Sampling, CeilLawAgainstEnumeration) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> len(0, 2000);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = len(rng);
    const auto got = sample_frames(numbered_frames(n));
    const auto want = oracle::sampled_indices(static_cast<std::int64_t>(n));
    ASSERT_EQ(got.size(), want.size());
    ASSERT_EQ(got.size(), sampled_count(n));
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_EQ(got[i].frame_index, want[i]);
  }
}

TEST(Sampling, OneFramePerSecondAfterNormalization) {
  for (int fps : {10, 24, 25, 30, 48, 60}) {
    for (int seconds : {1, 3, 7}) {
      const std::size_t n = static_cast<std::size_t>(fps) * seconds;
      const auto sampled = sample_frames(normalize_fps(numbered_frames(n), fps));
      EXPECT_LE(std::abs(static_cast<long>(sampled.size()) - seconds), 1) << fps << " fps";
    }
  }
}

TEST(FrameDirectory, OrderedByNumericIndex) {
  TempDir dir("fragc-test");
  const Image img = solid_image(4, 4, 10);
  for (int i : {10, 2, 0, 1}) {
    char name[32];
    std::snprintf(name, sizeof name, "clip_%06d.png", i);
    write_png(dir.path() / name, img);
  }
  write_text(dir.path() / "notes.txt", "ignored");
  write_text(dir.path() / "clip_12.png", "wrong width, ignored");
  const auto files = list_frame_directory(dir.path());
  ASSERT_EQ(files.size(), 4u);
  EXPECT_EQ(files[0].filename(), "clip_000000.png");
  EXPECT_EQ(files[1].filename(), "clip_000001.png");
  EXPECT_EQ(files[2].filename(), "clip_000002.png");
  EXPECT_EQ(files[3].filename(), "clip_000010.png");
}

TEST(FrameDirectory, MissingIsIoError) {
  EXPECT_THROW(list_frame_directory("/nonexistent/fragc/frames"), IoError);
  FrameSourceSpec spec{SourceKind::FrameDirectory, "/nonexistent/fragc/frames", 30};
  EXPECT_THROW(open_source(spec, {}), IoError);
}

TEST(FrameDirectory, UnreadableFrameIsIoError) {
  TempDir dir("fragc-test");
  write_text(dir.path() / "f_000000.png", "not a png");
  DirectorySequence seq(dir.path(), 30);
  EXPECT_THROW(seq.load(0), IoError);
}

TEST(SampledStream, MatchesEagerPipeline) {
  std::vector<Image> images;
  for (int i = 0; i < 137; ++i) images.push_back(solid_image(2, 2, static_cast<std::uint8_t>(i)));
  for (int fps : {15, 30, 60}) {
    auto seq = std::make_shared<MemorySequence>(images, fps);
    SampledFrameStream stream(seq);
    std::vector<RawFrame> raw;
    for (std::size_t i = 0; i < images.size(); ++i) raw.push_back(RawFrame{static_cast<std::int64_t>(i), images[i]});
    const auto eager = sample_frames(normalize_fps(raw, fps));
    ASSERT_EQ(stream.size(), eager.size());
    for (const auto& want : eager) {
      const auto got = stream.next();
      ASSERT_TRUE(got.has_value());
      EXPECT_EQ(got->frame_index, want.frame_index);
      EXPECT_EQ(got->image, want.image);
    }
    EXPECT_FALSE(stream.next().has_value());
  }
}

TEST(Decoder, ResolveOrder) {
  ::unsetenv("FRAGC_DECODER");
  EXPECT_EQ(DecoderConfig::resolve(std::nullopt).program, "ffmpeg");
  ::setenv("FRAGC_DECODER", "/opt/dec", 1);
  EXPECT_EQ(DecoderConfig::resolve(std::nullopt).program, "/opt/dec");
  EXPECT_EQ(DecoderConfig::resolve(std::string("mydec")).program, "mydec");
  ::unsetenv("FRAGC_DECODER");
}

TEST(Decoder, FakeDecoderProducesFrameDirectory) {
  // A stand-in decoder: copies the frames listed in the "video" file.
  TempDir work("fragc-test");
  const auto frames = work.path() / "src";
  write_label_frames(frames, std::vector<ActionClass>{K, D}, 30, 8, 8);
  const auto script = work.path() / "fake-decoder.sh";
  write_text(script,
             "#!/bin/sh\n"
             "# args: ... -i <input> ... <out>/frame_%06d.png\n"
             "for last; do :; done\n"
             "while [ $# -gt 0 ]; do [ \"$1\" = -i ] && in=$2; shift; done\n"
             "out=$(dirname \"$last\")\n"
             "cp \"$(cat \"$in\")\"/*.png \"$out\"/\n");
  std::filesystem::permissions(script, std::filesystem::perms::owner_all);
  const auto video = work.path() / "clip.mp4";
  write_text(video, frames.string());

  DecoderConfig dec{script.string()};
  const auto opened = open_source(FrameSourceSpec{SourceKind::VideoFile, video, 30}, dec);
  EXPECT_EQ(opened.frames->size(), 60u);
  EXPECT_EQ(opened.input_digest, sha256_file(video));
}

TEST(Decoder, FailingDecoderIsIoError) {
  TempDir work("fragc-test");
  const auto video = work.path() / "clip.mp4";
  write_text(video, "x");
  EXPECT_THROW(run_decoder(DecoderConfig{"false"}, video, work.path()), IoError);
  EXPECT_THROW(run_decoder(DecoderConfig{"/nonexistent/decoder"}, video, work.path()), IoError);
}
