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

#include <future>
#include <random>

#include "fixtures.hpp"
#include "fragc/backend.hpp"
#include "fragc/error.hpp"
#include "fragc/ingest.hpp"

using namespace fragc;
using namespace fragc::testing;

namespace {

std::filesystem::path models() { return fixture_dir() / "models"; }

std::array<double, 4> expected_mock(int bucket) {
  std::array<double, 4> p{0.01, 0.01, 0.01, 0.01};
  p[static_cast<std::size_t>(bucket)] = 0.97;
  return p;
}

}  // namespace

TEST(Mock, ExtremeInputs) {
  MockClassifier mock;
  EXPECT_EQ(mock.classify(ModelInput::filled(0.0)).values(), expected_mock(0));
  EXPECT_EQ(mock.classify(ModelInput::filled(1.0)).values(), expected_mock(3));
  EXPECT_EQ(mock.classify(ModelInput::filled(0.0)).argmax(), ActionClass::Kill);
  EXPECT_EQ(mock.classify(ModelInput::filled(1.0)).argmax(), ActionClass::Smoke);
}

TEST(Mock, FourEqualBuckets) {
  for (int i = 0; i <= 1000; ++i) {
    const double m = i / 1000.0;
    const int bucket = m < 0.25 ? 0 : m < 0.5 ? 1 : m < 0.75 ? 2 : 3;
    ASSERT_EQ(mock_probabilities(m).values(), expected_mock(bucket)) << m;
  }
}

TEST(Mock, DemoBrightnessLevels) {
  for (auto c : kAllClasses) {
    const double mean = brightness_for(c) / 255.0;
    EXPECT_EQ(mock_probabilities(mean).argmax(), c);
  }
}

TEST(FeatureNormalization, Examples) {
  const std::vector<double> a{2, 4, 6};
  const auto fa = normalize_features(a);
  EXPECT_EQ(fa.values, (std::vector<double>{0, 0.5, 1}));
  EXPECT_TRUE(fa.normalized);
  const std::vector<double> b{5, 5, 5};
  EXPECT_EQ(normalize_features(b).values, (std::vector<double>{0, 0, 0}));
}

TEST(FeatureNormalization, ScalarOracle) {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> dist(0.0, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> raw(100);
    for (auto& v : raw) v = dist(rng);
    double lo = raw[0], hi = raw[0];
    for (double v : raw) {
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
    const auto got = normalize_features(raw).values;
    ASSERT_EQ(got.size(), raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) EXPECT_NEAR(got[i], (raw[i] - lo) / (hi - lo), 1e-9);
  }
}

TEST(FeatureNormalization, IdempotentOnNormalized) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> dist(-3, 3);
  std::vector<double> raw(64);
  for (auto& v : raw) v = dist(rng);
  const auto once = normalize_features(raw).values;
  const auto twice = normalize_features(once).values;
  for (std::size_t i = 0; i < once.size(); ++i) EXPECT_NEAR(once[i], twice[i], 1e-12);
}

TEST(Manifest, KnownShapes) {
  EXPECT_EQ(known_feature_shape("vgg16"), (FeatureShape{7, 7, 512}));
  EXPECT_EQ(known_feature_shape("inception_v3"), (FeatureShape{5, 5, 2048}));
  EXPECT_EQ(known_feature_shape("resnet152_v2"), (FeatureShape{7, 7, 2048}));
  EXPECT_EQ(known_feature_shape("inception_resnet_v2"), (FeatureShape{5, 5, 1536}));
  EXPECT_FALSE(known_feature_shape("tiny_fused").has_value());
}

TEST(Manifest, FlattenedDimMustMatchShape) {
  const auto m = BackendManifest::from_json(
      R"({"name":"x","feature_shape":[2,2,4],"flattened_dim":16,"model_artifact_path":"x.onnx"})", "/models");
  EXPECT_EQ(m.model_artifact_path, std::filesystem::path("/models/x.onnx"));
  EXPECT_THROW(BackendManifest::from_json(
                   R"({"name":"x","feature_shape":[2,2,4],"flattened_dim":15,"model_artifact_path":"x.onnx"})"),
               ManifestError);
}

TEST(Manifest, KnownBackboneShapeEnforced) {
  try {
    BackendManifest::from_json(
        R"({"name":"vgg16","feature_shape":[7,7,256],"flattened_dim":12544,"model_artifact_path":"v.onnx"})");
    FAIL() << "expected ManifestError";
  } catch (const ManifestError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("7x7x512"), std::string::npos) << msg;
    EXPECT_NE(msg.find("7x7x256"), std::string::npos) << msg;
  }
}

TEST(Manifest, RejectsMalformedJson) {
  EXPECT_THROW(BackendManifest::from_json("{"), ManifestError);
  EXPECT_THROW(BackendManifest::from_json(R"({"name":"x"})"), ManifestError);
  EXPECT_THROW(read_manifest("/nonexistent/m.manifest.json"), LoadError);
}

TEST(Manifest, JsonRoundTrip) {
  const auto m = read_manifest(models() / "tiny_split.manifest.json");
  const auto again = BackendManifest::from_json(m.to_json());
  EXPECT_EQ(again.name, m.name);
  EXPECT_EQ(again.feature_shape, m.feature_shape);
  EXPECT_EQ(again.flattened_dim, m.flattened_dim);
  EXPECT_EQ(again.model_artifact_path, m.model_artifact_path);
  EXPECT_EQ(again.head_artifact_path, m.head_artifact_path);
  EXPECT_EQ(again.input_scaling, m.input_scaling);
}

TEST(Onnx, FusedModelMatchesGolden) {
  const auto backend = load_backend(read_manifest(models() / "tiny_fused.manifest.json"));
  const auto fixtures = read_golden(models() / "tiny_fused.golden.json");
  ASSERT_GE(fixtures.size(), 10u);
  const auto check = verify_golden(*backend, fixtures, 1e-4);
  EXPECT_TRUE(check.ok()) << check.messages.front();
  EXPECT_EQ(check.fixtures, fixtures.size());
}

TEST(Onnx, SplitModelMatchesGolden) {
  const auto backend = load_backend(read_manifest(models() / "tiny_split.manifest.json"));
  const auto fixtures = read_golden(models() / "tiny_split.golden.json");
  const auto check = verify_golden(*backend, fixtures, 1e-4);
  EXPECT_TRUE(check.ok()) << (check.messages.empty() ? "" : check.messages.front());
}

TEST(Onnx, GoldenHashMismatchIsReported) {
  const auto backend = load_backend(read_manifest(models() / "tiny_fused.manifest.json"));
  auto fixtures = read_golden(models() / "tiny_fused.golden.json");
  fixtures.resize(1);
  fixtures[0].input_sha256 = std::string(64, '0');
  const auto check = verify_golden(*backend, fixtures);
  EXPECT_FALSE(check.ok());
}

TEST(Onnx, FeatureShapeMismatchNamesBothShapes) {
  try {
    load_backend(read_manifest(models() / "tiny_badshape.manifest.json"));
    FAIL() << "expected ManifestError";
  } catch (const ManifestError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("3x3x4"), std::string::npos) << msg;
    EXPECT_NE(msg.find("2x2x4"), std::string::npos) << msg;
  }
}

TEST(Onnx, MissingOrCorruptArtifactIsLoadError) {
  auto m = read_manifest(models() / "tiny_fused.manifest.json");
  m.model_artifact_path = models() / "does_not_exist.onnx";
  EXPECT_THROW(load_backend(m), LoadError);
  m.model_artifact_path = models() / "corrupt.onnx";
  EXPECT_THROW(load_backend(m), LoadError);
}

TEST(Onnx, ConcurrentClassifyIsDeterministic) {
  const auto backend = load_backend(read_manifest(models() / "tiny_split.manifest.json"));
  const auto input = ModelInput::filled(0.37);
  const auto want = backend->classify(input);
  std::vector<std::future<bool>> jobs;
  for (int t = 0; t < 8; ++t) {
    jobs.push_back(std::async(std::launch::async, [&] {
      for (int i = 0; i < 20; ++i) {
        if (!(backend->classify(input) == want)) return false;
      }
      return true;
    }));
  }
  for (auto& j : jobs) EXPECT_TRUE(j.get());
}

TEST(Resolve, MockAndManifestSpecs) {
  EXPECT_EQ(resolve_backend("mock", std::nullopt)->name(), "mock");
  EXPECT_EQ(resolve_backend("mock:vgg16", std::nullopt)->name(), "vgg16");
  EXPECT_EQ(resolve_backend("tiny_fused", models())->name(), "tiny_fused");
  EXPECT_EQ(resolve_backend((models() / "tiny_split.manifest.json").string(), std::nullopt)->name(), "tiny_split");
  EXPECT_THROW(resolve_backend("nope", models()), LoadError);
  const auto demo = demo_backends(5);
  ASSERT_EQ(demo.size(), 5u);
}
