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

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <random>

#include "fragc/core.hpp"
#include "fragc/error.hpp"

using namespace fragc;

TEST(ActionClass, WireIdsAreFixed) {
  EXPECT_EQ(wire_id(ActionClass::Kill), 0);
  EXPECT_EQ(wire_id(ActionClass::Death), 1);
  EXPECT_EQ(wire_id(ActionClass::NoAction), 2);
  EXPECT_EQ(wire_id(ActionClass::Smoke), 3);
}

TEST(ActionClass, WireIdRoundTrip) {
  for (int id = 0; id < 4; ++id) EXPECT_EQ(wire_id(from_wire_id(id)), id);
  EXPECT_THROW(from_wire_id(4), InvalidInput);
  EXPECT_THROW(from_wire_id(-1), InvalidInput);
}

TEST(ActionClass, ParseNamesAndIds) {
  EXPECT_EQ(parse_class("kill"), ActionClass::Kill);
  EXPECT_EQ(parse_class("Death"), ActionClass::Death);
  EXPECT_EQ(parse_class("no_action"), ActionClass::NoAction);
  EXPECT_EQ(parse_class("No Action"), ActionClass::NoAction);
  EXPECT_EQ(parse_class("3"), ActionClass::Smoke);
  EXPECT_THROW(parse_class("grenade"), InvalidInput);
  for (auto c : kAllClasses) EXPECT_EQ(parse_class(class_name(c)), c);
}

TEST(OneHot, Examples) {
  EXPECT_EQ(one_hot(ActionClass::Smoke).bits(), (std::array<std::uint8_t, 4>{0, 0, 0, 1}));
  EXPECT_EQ(one_hot(ActionClass::Kill).bits(), (std::array<std::uint8_t, 4>{1, 0, 0, 0}));
  EXPECT_EQ(OneHotLabel({0, 1, 0, 0}).decode(), ActionClass::Death);
}

TEST(OneHot, MutualInverse) {
  for (auto c : kAllClasses) EXPECT_EQ(decode_one_hot(one_hot(c)), c);
}

TEST(OneHot, RejectsInvalidBits) {
  EXPECT_THROW(OneHotLabel({0, 0, 0, 0}), InvalidInput);
  EXPECT_THROW(OneHotLabel({1, 1, 0, 0}), InvalidInput);
  EXPECT_THROW(OneHotLabel({2, 0, 0, 0}), InvalidInput);
}

TEST(ProbabilityVector, Validation) {
  EXPECT_NO_THROW(ProbabilityVector({0.25, 0.25, 0.25, 0.25}));
  EXPECT_NO_THROW(ProbabilityVector({0.5, 0.5, 0.0, 1e-7}));
  EXPECT_THROW(ProbabilityVector({0.5, 0.5, 0.1, 0.0}), InvalidInput);
  EXPECT_THROW(ProbabilityVector({1.1, -0.1, 0.0, 0.0}), InvalidInput);
  EXPECT_THROW(ProbabilityVector({std::nan(""), 0.5, 0.5, 0.0}), InvalidInput);
}

TEST(ProbabilityVector, ArgmaxTieGoesToLowestId) {
  EXPECT_EQ(ProbabilityVector({0.25, 0.25, 0.25, 0.25}).argmax(), ActionClass::Kill);
  EXPECT_EQ(ProbabilityVector({0.1, 0.4, 0.1, 0.4}).argmax(), ActionClass::Death);
  EXPECT_EQ(ProbabilityVector({0.1, 0.1, 0.4, 0.4}).argmax(), ActionClass::NoAction);
  EXPECT_EQ(ProbabilityVector({0.1, 0.1, 0.1, 0.7}).argmax(), ActionClass::Smoke);
}

TEST(Softmax, ZerosAreUniform) {
  const auto p = softmax({0, 0, 0, 0});
  for (double v : p.values()) EXPECT_DOUBLE_EQ(v, 0.25);
}

TEST(Softmax, ShiftInvariance) {
  const std::array<double, 4> x{0.3, -1.2, 2.5, 0.0};
  const auto base = softmax(x);
  for (double k : {-100.0, -3.5, 1.0, 50.0, 700.0}) {
    std::array<double, 4> shifted = x;
    for (auto& v : shifted) v += k;
    const auto p = softmax(shifted);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(p.values()[i], base.values()[i], 1e-12) << "shift " << k;
  }
}

TEST(Softmax, MatchesHighPrecisionReference) {
  using Big = boost::multiprecision::cpp_bin_float_50;
  const std::array<double, 4> logits{1, 2, 3, 4};
  Big sum = 0;
  std::array<Big, 4> e;
  for (std::size_t i = 0; i < 4; ++i) {
    e[i] = boost::multiprecision::exp(Big(logits[i]));
    sum += e[i];
  }
  const auto p = softmax(logits);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(p.values()[i], static_cast<double>(e[i] / sum), 1e-9);
  }
  // Frozen 50-digit values for the same input, as a second check.
  EXPECT_NEAR(p.values()[0], 0.032058603280084988, 1e-15);
  EXPECT_NEAR(p.values()[3], 0.64391425988797231, 1e-15);
}

TEST(Softmax, RejectsNonFinite) {
  EXPECT_THROW(softmax({0, std::numeric_limits<double>::infinity(), 0, 0}), InvalidInput);
  EXPECT_THROW(softmax({0, 0, std::nan(""), 0}), InvalidInput);
}

TEST(Softmax, PropertyValidAndArgmaxPreserving) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-30.0, 30.0);
  for (int trial = 0; trial < 5000; ++trial) {
    std::array<double, 4> x{dist(rng), dist(rng), dist(rng), dist(rng)};
    const auto p = softmax(x);
    double sum = 0;
    for (double v : p.values()) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
      sum += v;
    }
    EXPECT_NEAR(sum, 1.0, 1e-6);
    EXPECT_EQ(index_of(p.argmax()), argmax_index(x));
  }
}

TEST(ActionCounts, NoActionIsNeverCounted) {
  ActionCounts c;
  EXPECT_THROW(c.increment(ActionClass::NoAction), InvalidInput);
  c.increment(ActionClass::Kill);
  c.increment(ActionClass::Kill);
  c.increment(ActionClass::Smoke);
  EXPECT_EQ(c.get(ActionClass::Kill), 2u);
  EXPECT_EQ(c.total(), 3u);
  const auto nz = c.nonzero();
  ASSERT_EQ(nz.size(), 2u);
  EXPECT_EQ(nz[0].first, ActionClass::Kill);
  EXPECT_EQ(nz[1].first, ActionClass::Smoke);
}
