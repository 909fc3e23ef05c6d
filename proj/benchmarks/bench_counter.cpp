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

#include "fragc/counter.hpp"

namespace {

std::vector<fragc::ActionClass> random_labels(std::size_t n) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> id(0, 3);
  std::vector<fragc::ActionClass> out(n);
  for (auto& c : out) c = fragc::from_wire_id(id(rng));
  return out;
}

void BM_CountLabels(benchmark::State& state, fragc::CountMode mode) {
  const auto labels = random_labels(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto trace = fragc::count_labels(labels, mode);
    benchmark::DoNotOptimize(trace);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(BM_CountLabels, literal, fragc::CountMode::Literal)->Range(64, 1 << 16);
BENCHMARK_CAPTURE(BM_CountLabels, run_collapse, fragc::CountMode::RunCollapse)->Range(64, 1 << 16);
