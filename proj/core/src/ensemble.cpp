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

#include "fragc/ensemble.hpp"

#include <algorithm>

namespace fragc {

VoteRecord majority_vote(std::span<const ModelScore> predictions) {
  if (predictions.empty()) throw InvalidInput("majority_vote: no predictions");

  VoteRecord rec;
  std::array<int, kNumClasses> tally{};
  std::array<std::vector<double>, kNumClasses> column;
  for (const auto& p : predictions) {
    const ActionClass choice = p.probabilities.argmax();
    rec.votes.push_back(Vote{p.model_name, choice, p.probabilities});
    ++tally[index_of(choice)];
    for (std::size_t c = 0; c < kNumClasses; ++c) column[c].push_back(p.probabilities.values()[c]);
  }
  // Summing in sorted order makes the mass bit-identical under any model order.
  std::array<double, kNumClasses> mass{};
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    std::sort(column[c].begin(), column[c].end());
    for (double v : column[c]) mass[c] += v;
  }

  const int top = *std::max_element(tally.begin(), tally.end());
  std::size_t best = kNumClasses;
  int tied = 0;
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    if (tally[c] != top) continue;
    ++tied;
    // Strict '>' keeps the lower wire id on an exact mass tie.
    if (best == kNumClasses || mass[c] > mass[best]) best = c;
  }
  rec.winner = static_cast<ActionClass>(best);
  rec.tie_broken = tied > 1;

  std::array<double, kNumClasses> mean{};
  const double n = static_cast<double>(predictions.size());
  for (std::size_t c = 0; c < kNumClasses; ++c) mean[c] = std::clamp(mass[c] / n, 0.0, 1.0);
  rec.ensemble = ProbabilityVector(mean);
  return rec;
}

VoteRecord majority_vote(std::span<const ProbabilityVector> predictions) {
  std::vector<ModelScore> named;
  named.reserve(predictions.size());
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    named.push_back(ModelScore{"model_" + std::to_string(i), predictions[i]});
  }
  return majority_vote(named);
}

}  // namespace fragc
