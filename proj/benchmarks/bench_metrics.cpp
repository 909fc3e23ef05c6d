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

#include <random>
#include <vector>

#include "fragc/metrics.hpp"

namespace {

void BM_Confusion(benchmark::State& state) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> id(0, 3);
  std::vector<fragc::LabeledPair> pairs(static_cast<std::size_t>(state.range(0)));
  for (auto& p : pairs) p = {fragc::from_wire_id(id(rng)), fragc::from_wire_id(id(rng))};
  for (auto _ : state) {
    auto r = fragc::report(fragc::confusion(pairs));
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_Confusion)->Range(80, 1 << 16);
