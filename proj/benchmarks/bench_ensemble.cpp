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

#include "fragc/ensemble.hpp"

namespace {

void BM_MajorityVote(benchmark::State& state) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  std::vector<fragc::ProbabilityVector> models;
  for (int m = 0; m < state.range(0); ++m) {
    std::array<double, fragc::kNumClasses> p{};
    double sum = 0;
    for (auto& v : p) sum += (v = u(rng));
    for (auto& v : p) v /= sum;
    models.emplace_back(p);
  }
  for (auto _ : state) {
    auto rec = fragc::majority_vote(models);
    benchmark::DoNotOptimize(rec);
  }
}

}  // namespace

BENCHMARK(BM_MajorityVote)->Arg(1)->Arg(5)->Arg(15);
