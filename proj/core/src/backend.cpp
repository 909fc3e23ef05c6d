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

#include "fragc/backend.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fragc/digest.hpp"
#include "fragc/error.hpp"
#include "json.hpp"

namespace fragc {
namespace {

using nlohmann::json;

std::string shape_string(const FeatureShape& s) {
  return std::to_string(s[0]) + "x" + std::to_string(s[1]) + "x" + std::to_string(s[2]);
}

std::filesystem::path resolve_against(const std::filesystem::path& p, const std::filesystem::path& base) {
  if (p.empty() || p.is_absolute() || base.empty()) return p;
  return base / p;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::optional<FeatureShape> known_feature_shape(std::string_view backbone) {
  if (backbone == "vgg16") return FeatureShape{7, 7, 512};
  if (backbone == "inception_v3") return FeatureShape{5, 5, 2048};
  if (backbone == "resnet152_v2") return FeatureShape{7, 7, 2048};
  if (backbone == "inception_resnet_v2") return FeatureShape{5, 5, 1536};
  return std::nullopt;
}

void BackendManifest::validate() const {
  if (name.empty()) throw ManifestError("manifest: empty name");
  for (int d : feature_shape) {
    if (d <= 0) throw ManifestError("manifest '" + name + "': feature_shape must be positive, got " +
                                    shape_string(feature_shape));
  }
  const std::size_t product = static_cast<std::size_t>(feature_shape[0]) * feature_shape[1] * feature_shape[2];
  if (product != flattened_dim) {
    throw ManifestError("manifest '" + name + "': flattened_dim " + std::to_string(flattened_dim) +
                        " != product of feature_shape " + shape_string(feature_shape) + " (" +
                        std::to_string(product) + ")");
  }
  if (auto known = known_feature_shape(name); known && *known != feature_shape) {
    throw ManifestError("manifest '" + name + "': feature_shape " + shape_string(feature_shape) +
                        " but " + name + " produces " + shape_string(*known));
  }
}

BackendManifest BackendManifest::from_json(std::string_view text, const std::filesystem::path& base_dir) {
  BackendManifest m;
  try {
    const json j = json::parse(text);
    m.name = j.at("name").get<std::string>();
    m.feature_shape = j.at("feature_shape").get<FeatureShape>();
    m.flattened_dim = j.at("flattened_dim").get<std::size_t>();
    if (j.contains("input_scaling")) {
      const auto& s = j["input_scaling"];
      m.input_scaling.scale = s.value("scale", m.input_scaling.scale);
      m.input_scaling.offset = s.value("offset", m.input_scaling.offset);
      const auto order = s.value("channel_order", std::string("rgb"));
      if (order != "rgb" && order != "bgr") throw ManifestError("manifest: channel_order must be rgb or bgr");
      m.input_scaling.bgr = order == "bgr";
    }
    const auto layout = j.value("input_layout", std::string("nhwc"));
    if (layout != "nhwc" && layout != "nchw") throw ManifestError("manifest: input_layout must be nhwc or nchw");
    m.input_layout = layout == "nchw" ? TensorLayout::NCHW : TensorLayout::NHWC;
    const auto output = j.value("output", std::string("probabilities"));
    if (output != "probabilities" && output != "logits") {
      throw ManifestError("manifest: output must be probabilities or logits");
    }
    m.output = output == "logits" ? ModelOutput::Logits : ModelOutput::Probabilities;
    m.model_artifact_path = resolve_against(j.at("model_artifact_path").get<std::string>(), base_dir);
    if (j.contains("head_artifact_path") && !j["head_artifact_path"].is_null()) {
      m.head_artifact_path = resolve_against(j["head_artifact_path"].get<std::string>(), base_dir);
    }
    m.opset = j.value("opset", 13);
    m.execution_provider = j.value("execution_provider", std::string("cpu"));
  } catch (const json::exception& e) {
    throw ManifestError(std::string("manifest: ") + e.what());
  }
  m.validate();
  return m;
}

std::string BackendManifest::to_json() const {
  json j;
  j["name"] = name;
  j["feature_shape"] = feature_shape;
  j["flattened_dim"] = flattened_dim;
  j["input_scaling"] = {{"scale", input_scaling.scale},
                        {"offset", input_scaling.offset},
                        {"channel_order", input_scaling.bgr ? "bgr" : "rgb"}};
  j["input_layout"] = input_layout == TensorLayout::NCHW ? "nchw" : "nhwc";
  j["output"] = output == ModelOutput::Logits ? "logits" : "probabilities";
  j["model_artifact_path"] = model_artifact_path.string();
  if (!head_artifact_path.empty()) j["head_artifact_path"] = head_artifact_path.string();
  j["opset"] = opset;
  j["execution_provider"] = execution_provider;
  return j.dump(2);
}

BackendManifest read_manifest(const std::filesystem::path& path) {
  return BackendManifest::from_json(read_text(path), path.parent_path());
}

FeatureVector normalize_features(std::span<const double> raw) {
  FeatureVector out{std::vector<double>(raw.size(), 0.0), true};
  if (raw.empty()) return out;
  const auto [lo_it, hi_it] = std::minmax_element(raw.begin(), raw.end());
  const double lo = *lo_it;
  const double range = *hi_it - lo;
  if (range == 0.0) return out;
  for (std::size_t i = 0; i < raw.size(); ++i) out.values[i] = (raw[i] - lo) / range;
  return out;
}

ProbabilityVector mock_probabilities(double mean_value) {
  const double m = std::clamp(mean_value, 0.0, 1.0);
  const auto bucket = std::min<std::size_t>(kNumClasses - 1, static_cast<std::size_t>(m * kNumClasses));
  std::array<double, kNumClasses> p;
  p.fill(0.01);
  p[bucket] = 0.97;
  return ProbabilityVector(p);
}

ProbabilityVector MockClassifier::classify(const ModelInput& input) const {
  return mock_probabilities(input.mean());
}

std::optional<std::filesystem::path> model_dir_from_env() {
  if (const char* env = std::getenv("FRAGC_MODEL_DIR"); env != nullptr && *env != '\0') {
    return std::filesystem::path(env);
  }
  return std::nullopt;
}

ClassifierPtr resolve_backend(const std::string& spec, const std::optional<std::filesystem::path>& model_dir) {
  if (spec == "mock") return std::make_shared<MockClassifier>();
  if (spec.rfind("mock:", 0) == 0) return std::make_shared<MockClassifier>(spec.substr(5));

  std::error_code ec;
  const std::filesystem::path as_path(spec);
  if (std::filesystem::is_regular_file(as_path, ec)) return load_backend(read_manifest(as_path));

  if (!model_dir) {
    throw LoadError("backend '" + spec + "' is not a manifest file and no model directory is set");
  }
  const auto manifest = *model_dir / (spec + ".manifest.json");
  if (!std::filesystem::is_regular_file(manifest, ec)) {
    throw LoadError("no manifest for backend '" + spec + "' at " + manifest.string());
  }
  return load_backend(read_manifest(manifest));
}

std::vector<ClassifierPtr> demo_backends(std::size_t count) {
  std::vector<ClassifierPtr> out;
  const auto mock = std::make_shared<const MockClassifier>();
  for (std::size_t i = 0; i < count; ++i) out.push_back(mock);
  return out;
}

std::vector<GoldenFixture> read_golden(const std::filesystem::path& path) {
  std::vector<GoldenFixture> out;
  try {
    const json j = json::parse(read_text(path));
    const json& list = j.is_array() ? j : j.at("fixtures");
    for (const auto& e : list) {
      GoldenFixture g;
      g.input_sha256 = e.at("input_sha256").get<std::string>();
      g.input = resolve_against(e.at("input").get<std::string>(), path.parent_path());
      g.probabilities = e.at("probabilities").get<std::array<double, kNumClasses>>();
      out.push_back(std::move(g));
    }
  } catch (const json::exception& e) {
    throw LoadError("golden file " + path.string() + ": " + e.what());
  }
  return out;
}

GoldenCheck verify_golden(const Classifier& backend, std::span<const GoldenFixture> fixtures, double tolerance) {
  GoldenCheck check;
  for (const auto& g : fixtures) {
    ++check.fixtures;
    if (sha256_file(g.input) != g.input_sha256) {
      ++check.failures;
      check.messages.push_back(g.input.string() + ": input hash mismatch");
      continue;
    }
    const auto p = backend.classify(preprocess(RawFrame{0, read_image(g.input)}));
    double worst = 0.0;
    for (std::size_t i = 0; i < kNumClasses; ++i) {
      worst = std::max(worst, std::abs(p.values()[i] - g.probabilities[i]));
    }
    check.max_abs_error = std::max(check.max_abs_error, worst);
    if (worst > tolerance) {
      ++check.failures;
      check.messages.push_back(g.input.string() + ": max abs error " + std::to_string(worst));
    }
  }
  return check;
}

}  // namespace fragc
