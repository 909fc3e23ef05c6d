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

#include <span>
#include <string>
#include <vector>

#include "fragc/core.hpp"

namespace fragc {

struct Vote {
  std::string model_name;
  ActionClass choice;
  ProbabilityVector probabilities;
};

struct VoteRecord {
  std::vector<Vote> votes;
  ActionClass winner = ActionClass::NoAction;
  /// Set when two or more classes shared the top vote count.
  bool tie_broken = false;
  /// Element-wise mean of the input vectors; this is what the gate sees.
  ProbabilityVector ensemble = ProbabilityVector::uniform();
};

/// Hard majority vote. Each model votes for its argmax; the class with the
/// most votes wins. A tie on votes goes to the tied class with the largest
/// probability mass summed over all models, and an exact tie on that goes
/// to the lowest wire id. Throws InvalidInput on an empty list.
VoteRecord majority_vote(std::span<const ModelScore> predictions);
VoteRecord majority_vote(std::span<const ProbabilityVector> predictions);

}  // namespace fragc
