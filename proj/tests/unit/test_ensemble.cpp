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

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "fragc/backend.hpp"
#include "fragc/ensemble.hpp"
#include "fragc/error.hpp"

using namespace fragc;
using namespace fragc::testing;

namespace {

ProbabilityVector peaked(ActionClass c, double top = 0.7) {
  std::array<double, 4> p;
  p.fill((1.0 - top) / 3.0);
  p[index_of(c)] = top;
  return ProbabilityVector(p);
}

ProbabilityVector random_vector(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::array<double, 4> p;
  double s = 0;
  for (auto& v : p) s += (v = u(rng));
  for (auto& v : p) v /= s;
  return ProbabilityVector(p);
}

}  // namespace

TEST(MajorityVote, StrictPlurality) {
  const std::vector<ProbabilityVector> in{peaked(K), peaked(K), peaked(D), peaked(S), peaked(K)};
  const auto r = majority_vote(in);
  EXPECT_EQ(r.winner, K);
  EXPECT_FALSE(r.tie_broken);
  ASSERT_EQ(r.votes.size(), 5u);
  EXPECT_EQ(r.votes[2].choice, D);
  EXPECT_EQ(r.votes[0].model_name, "model_0");
}

TEST(MajorityVote, UnanimityKeepsVector) {
  const ProbabilityVector v({0.1, 0.2, 0.6, 0.1});
  const std::vector<ProbabilityVector> in(5, v);
  const auto r = majority_vote(in);
  EXPECT_EQ(r.winner, NA);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(r.ensemble.values()[i], v.values()[i], 1e-15);
}

TEST(MajorityVote, TwoTwoOneBrokenBySummedProbability) {
  // Kill column sums to 1.9, Death column to 1.7.
  const std::vector<ProbabilityVector> in{
      ProbabilityVector({0.6, 0.3, 0.05, 0.05}),  // Kill
      ProbabilityVector({0.5, 0.4, 0.05, 0.05}),  // Kill
      ProbabilityVector({0.3, 0.5, 0.1, 0.1}),    // Death
      ProbabilityVector({0.3, 0.5, 0.1, 0.1}),    // Death
      ProbabilityVector({0.2, 0.0, 0.1, 0.7}),    // Smoke
  };
  const auto r = majority_vote(in);
  EXPECT_EQ(r.winner, K);
  EXPECT_TRUE(r.tie_broken);
  EXPECT_NEAR(r.ensemble[K], 1.9 / 5, 1e-12);
  EXPECT_NEAR(r.ensemble[D], 1.7 / 5, 1e-12);
}

TEST(MajorityVote, TieBreakIsNotIdOrder) {
  // Death ties Kill on votes and wins on mass despite the higher id.
  const std::vector<ProbabilityVector> in{
      ProbabilityVector({0.4, 0.35, 0.25, 0.0}),
      ProbabilityVector({0.4, 0.35, 0.25, 0.0}),
      ProbabilityVector({0.0, 0.9, 0.1, 0.0}),
      ProbabilityVector({0.0, 0.9, 0.1, 0.0}),
  };
  const auto r = majority_vote(in);
  EXPECT_EQ(r.winner, D);
  EXPECT_TRUE(r.tie_broken);
}

TEST(MajorityVote, ExactTieFallsBackToLowestId) {
  const std::vector<ProbabilityVector> in{ProbabilityVector({0.0, 0.0, 0.0, 1.0}),
                                          ProbabilityVector({0.0, 0.0, 1.0, 0.0})};
  const auto r = majority_vote(in);
  EXPECT_EQ(r.winner, NA);
  EXPECT_TRUE(r.tie_broken);
}

TEST(MajorityVote, EmptyIsInvalid) {
  EXPECT_THROW(majority_vote(std::span<const ProbabilityVector>{}), InvalidInput);
  EXPECT_THROW(majority_vote(std::span<const ModelScore>{}), InvalidInput);
}

TEST(MajorityVote, NamedScoresKeepNames) {
  const std::vector<ModelScore> in{{"vgg16", peaked(S)}, {"xception", peaked(S)}};
  const auto r = majority_vote(in);
  EXPECT_EQ(r.votes[1].model_name, "xception");
  EXPECT_EQ(r.winner, S);
}

TEST(MajorityVoteLaws, ThreeOfFiveAlwaysWins) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto c = kAllClasses[rng() % 4];
    std::vector<ProbabilityVector> in;
    for (int i = 0; i < 3; ++i) {
      // Barely voting for c.
      auto p = random_vector(rng).values();
      p[index_of(c)] = *std::max_element(p.begin(), p.end()) + 1e-3;
      double s = 0;
      for (double v : p) s += v;
      for (auto& v : p) v /= s;
      in.emplace_back(p);
    }
    for (int i = 0; i < 2; ++i) {
      const auto other = kAllClasses[(index_of(c) + 1 + rng() % 3) % 4];
      in.push_back(peaked(other, 1.0));
    }
    ASSERT_EQ(in[0].argmax(), c);
    EXPECT_EQ(majority_vote(in).winner, c);
  }
}

TEST(MajorityVoteLaws, PermutationInvariant) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<ProbabilityVector> in;
    for (int i = 0; i < 5; ++i) in.push_back(random_vector(rng));
    const auto base = majority_vote(in);
    for (int p = 0; p < 5; ++p) {
      std::shuffle(in.begin(), in.end(), rng);
      const auto r = majority_vote(in);
      ASSERT_EQ(r.winner, base.winner);
      ASSERT_EQ(r.tie_broken, base.tie_broken);
    }
  }
}

TEST(MajorityVoteLaws, ReplicatedMockEqualsSingleModel) {
  MockClassifier mock;
  for (int i = 0; i <= 200; ++i) {
    const auto input = ModelInput::filled(i / 200.0);
    const auto single = mock.classify(input);
    const std::vector<ProbabilityVector> five(5, single);
    EXPECT_EQ(majority_vote(five).winner, single.argmax());
  }
}

TEST(MajorityVoteLaws, ConfidentMeanAgreesWithVote) {
  // A mean above 0.75 needs at least three voters on that class, so the
  // vote winner and argmax of the mean coincide on every gated frame.
  std::mt19937_64 rng(10);
  int gated = 0;
  for (int trial = 0; trial < 20000; ++trial) {
    std::vector<ProbabilityVector> in;
    const auto c = kAllClasses[rng() % 4];
    for (int i = 0; i < 5; ++i) in.push_back(rng() % 5 ? peaked(c, 0.6 + 0.4 * (rng() % 100) / 100.0) : random_vector(rng));
    const auto r = majority_vote(in);
    if (r.ensemble.max() > 0.75) {
      ++gated;
      ASSERT_EQ(r.winner, r.ensemble.argmax());
    }
  }
  EXPECT_GT(gated, 1000);
}
