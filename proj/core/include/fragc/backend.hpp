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

#include <array>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fragc/core.hpp"
#include "fragc/preprocess.hpp"

namespace fragc {

using FeatureShape = std::array<int, 3>;

/// Backbone output shape before flattening for the backbones we know about.
std::optional<FeatureShape> known_feature_shape(std::string_view backbone);

enum class ModelOutput { Probabilities, Logits };

/// Sidecar describing an exported model (`<name>.manifest.json`).
///
/// When `head_artifact_path` is empty the artifact at `model_artifact_path`
/// is a fused backbone+head network mapping the input tensor straight to
/// four class scores. Otherwise the first artifact is the bare backbone,
/// its output is flattened and min-max normalized by the engine, and the
/// head artifact maps that feature vector to the class scores.
struct BackendManifest {
  std::string name;
  FeatureShape feature_shape{0, 0, 0};
  std::size_t flattened_dim = 0;
  InputScaling input_scaling;
  TensorLayout input_layout = TensorLayout::NHWC;
  ModelOutput output = ModelOutput::Probabilities;
  std::filesystem::path model_artifact_path;
  std::filesystem::path head_artifact_path;
  int opset = 13;
  std::string execution_provider = "cpu";

  /// Throws ManifestError when flattened_dim disagrees with feature_shape or
  /// a known backbone name carries the wrong shape.
  void validate() const;

  /// Relative artifact paths resolve against `base_dir`.
  static BackendManifest from_json(std::string_view text, const std::filesystem::path& base_dir = {});
  std::string to_json() const;
};

/// Reads and validates `<name>.manifest.json`; artifact paths are made
/// relative to the manifest's directory.
BackendManifest read_manifest(const std::filesystem::path& path);

struct FeatureVector {
  std::vector<double> values;
  bool normalized = false;
};

/// Per-sample min-max scaling to [0,1]. A constant vector maps to zeros.
FeatureVector normalize_features(std::span<const double> raw);

/// Per-frame classifier. Implementations are immutable after construction
/// and may be shared across threads.
class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual const std::string& name() const noexcept = 0;
  /// Deterministic; always returns a valid ProbabilityVector.
  virtual ProbabilityVector classify(const ModelInput& input) const = 0;
};

using ClassifierPtr = std::shared_ptr<const Classifier>;

/// Mock probabilities for a given mean input value: the mean's quarter of
/// [0,1] selects the class in wire-id order, which gets 0.97 while the
/// other three get 0.01 each.
ProbabilityVector mock_probabilities(double mean_value);

class MockClassifier final : public Classifier {
 public:
  explicit MockClassifier(std::string name = "mock") : name_(std::move(name)) {}
  const std::string& name() const noexcept override { return name_; }
  ProbabilityVector classify(const ModelInput& input) const override;

 private:
  std::string name_;
};

/// Loads the ONNX artifact(s) named by the manifest and checks their real
/// input/output dimensions against it (ManifestError on mismatch, with
/// both shapes in the message). Missing or corrupt artifacts throw LoadError.
ClassifierPtr load_backend(const BackendManifest& manifest);

/// Backend selector used by the CLI and service: "mock" (or "mock:<name>"),
/// a path to a manifest file, or a bare name looked up as
/// `<model_dir>/<name>.manifest.json`.
ClassifierPtr resolve_backend(const std::string& spec, const std::optional<std::filesystem::path>& model_dir);

/// `count` mock classifiers named "mock".
std::vector<ClassifierPtr> demo_backends(std::size_t count = 5);

/// $FRAGC_MODEL_DIR if set.
std::optional<std::filesystem::path> model_dir_from_env();

/// One entry of `<name>.golden.json`.
struct GoldenFixture {
  std::string input_sha256;
  std::filesystem::path input;
  std::array<double, kNumClasses> probabilities{};
};

std::vector<GoldenFixture> read_golden(const std::filesystem::path& path);

struct GoldenCheck {
  std::size_t fixtures = 0;
  std::size_t failures = 0;
  double max_abs_error = 0.0;
  std::vector<std::string> messages;
  bool ok() const noexcept { return failures == 0; }
};

/// Runs each golden image through preprocess + classify and compares the
/// four probabilities entry-wise against the recorded ones.
GoldenCheck verify_golden(const Classifier& backend, std::span<const GoldenFixture> fixtures,
                          double tolerance = 1e-4);

}  // namespace fragc
