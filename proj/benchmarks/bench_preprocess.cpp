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

#include <benchmark/benchmark.h>

#include "fragc/preprocess.hpp"

namespace {

// Frame sizes: 720p and 1080p down to the model input.
void BM_Resize(benchmark::State& state) {
  const int w = static_cast<int>(state.range(0));
  const int h = static_cast<int>(state.range(1));
  fragc::Image src(w, h);
  for (std::size_t i = 0; i < src.data.size(); ++i) src.data[i] = static_cast<std::uint8_t>(i * 31);
  for (auto _ : state) {
    auto out = fragc::resize(src);
    benchmark::DoNotOptimize(out.data.data());
  }
}

void BM_Normalize(benchmark::State& state) {
  fragc::Image src(fragc::kInputSide, fragc::kInputSide, 3, 117);
  for (auto _ : state) {
    auto in = fragc::normalize_pixels(src);
    benchmark::DoNotOptimize(in);
  }
}

}  // namespace

BENCHMARK(BM_Resize)->Args({1280, 720})->Args({1920, 1080})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Normalize)->Unit(benchmark::kMicrosecond);
