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

// ONNX-backed classifiers, executed through OpenCV's dnn module.

#include <opencv2/core.hpp>
#include <opencv2/dnn.hpp>

#include <cmath>
#include <mutex>
#include <numeric>

#include "fragc/backend.hpp"
#include "fragc/error.hpp"

namespace fragc {
namespace {

std::string dims_string(const cv::Mat& m) {
  std::string s;
  for (int i = 0; i < m.dims; ++i) {
    if (i) s += "x";
    s += std::to_string(m.size[i]);
  }
  return s;
}

std::string dims_string(std::span<const int> dims) {
  std::string s;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) s += "x";
    s += std::to_string(dims[i]);
  }
  return s;
}

cv::dnn::Net read_net(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) throw LoadError("model artifact missing: " + path.string());
  try {
    cv::dnn::Net net = cv::dnn::readNetFromONNX(path.string());
    if (net.empty()) throw LoadError("model artifact is empty: " + path.string());
    net.setPreferableBackend(cv::dnn::DNN_BACKEND_OPENCV);
    net.setPreferableTarget(cv::dnn::DNN_TARGET_CPU);
    return net;
  } catch (const cv::Exception& e) {
    throw LoadError("cannot parse model artifact " + path.string() + ": " + e.what());
  }
}

std::array<int, 4> input_dims(TensorLayout layout) {
  if (layout == TensorLayout::NCHW) return {1, kInputChannels, kInputSide, kInputSide};
  return {1, kInputSide, kInputSide, kInputChannels};
}

cv::Mat run(cv::dnn::Net& net, const cv::Mat& input) {
  net.setInput(input);
  return net.forward().clone();
}

std::vector<double> flatten(const cv::Mat& m) {
  cv::Mat f;
  m.convertTo(f, CV_64F);
  f = f.reshape(1, 1);
  return {f.begin<double>(), f.end<double>()};
}

ProbabilityVector to_probabilities(const std::vector<double>& out, ModelOutput kind, const std::string& name) {
  if (out.size() != kNumClasses) {
    throw Error(name + ": model produced " + std::to_string(out.size()) + " scores, expected 4");
  }
  std::array<double, kNumClasses> v;
  std::copy(out.begin(), out.end(), v.begin());
  if (kind == ModelOutput::Logits) return softmax(v);
  double sum = 0.0;
  for (double& x : v) {
    if (!std::isfinite(x) || x < -1e-6) throw Error(name + ": model output is not a probability vector");
    x = std::max(x, 0.0);
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-3) {
    throw Error(name + ": model probabilities sum to " + std::to_string(sum));
  }
  // float32 softmax rounding; bring the sum back within the core tolerance.
  for (double& x : v) x = std::min(1.0, x / sum);
  return ProbabilityVector(v);
}

class OnnxClassifier final : public Classifier {
 public:
  explicit OnnxClassifier(BackendManifest manifest) : manifest_(std::move(manifest)) {
    backbone_ = read_net(manifest_.model_artifact_path);
    if (!manifest_.head_artifact_path.empty()) head_ = read_net(manifest_.head_artifact_path);
    check_dimensions();
  }

  const std::string& name() const noexcept override { return manifest_.name; }

  ProbabilityVector classify(const ModelInput& input) const override {
    const auto tensor = to_tensor(input, manifest_.input_scaling, manifest_.input_layout);
    const auto dims = input_dims(manifest_.input_layout);
    cv::Mat blob(4, dims.data(), CV_32F, const_cast<float*>(tensor.data()));

    std::lock_guard lock(mu_);
    try {
      cv::Mat out = run(backbone_, blob);
      if (head_.empty()) return to_probabilities(flatten(out), manifest_.output, manifest_.name);
      const auto features = normalize_features(flatten(out));
      cv::Mat feat(1, static_cast<int>(features.values.size()), CV_64F,
                   const_cast<double*>(features.values.data()));
      cv::Mat feat32;
      feat.convertTo(feat32, CV_32F);
      return to_probabilities(flatten(run(head_, feat32)), manifest_.output, manifest_.name);
    } catch (const cv::Exception& e) {
      throw Error(manifest_.name + ": inference failed: " + e.what());
    }
  }

 private:
  void check_dimensions() {
    const auto dims = input_dims(manifest_.input_layout);
    const std::string want_in = dims_string(dims);
    cv::Mat zeros(4, dims.data(), CV_32F, cv::Scalar(0));
    cv::Mat out;
    try {
      out = run(backbone_, zeros);
    } catch (const cv::Exception& e) {
      throw ManifestError(manifest_.name + ": artifact rejects manifest input shape " + want_in + ": " + e.what());
    }

    if (head_.empty()) {
      if (out.total() != kNumClasses) {
        throw ManifestError(manifest_.name + ": artifact output " + dims_string(out) +
                            " does not match manifest output 1x4");
      }
      return;
    }

    const auto& fs = manifest_.feature_shape;
    const std::array<int, 4> want_hwc{1, fs[0], fs[1], fs[2]};
    const std::array<int, 4> want_chw{1, fs[2], fs[0], fs[1]};
    const bool shape_ok = out.dims == 4 &&
                          (std::equal(want_hwc.begin(), want_hwc.end(), out.size.p) ||
                           std::equal(want_chw.begin(), want_chw.end(), out.size.p));
    if (!shape_ok || out.total() != manifest_.flattened_dim) {
      throw ManifestError(manifest_.name + ": backbone output " + dims_string(out) +
                          " does not match manifest feature_shape " + dims_string(want_hwc) +
                          " (flattened_dim " + std::to_string(manifest_.flattened_dim) + ")");
    }

    cv::Mat feat(1, static_cast<int>(manifest_.flattened_dim), CV_32F, cv::Scalar(0));
    cv::Mat scores;
    try {
      scores = run(head_, feat);
    } catch (const cv::Exception& e) {
      throw ManifestError(manifest_.name + ": head rejects manifest feature vector 1x" +
                          std::to_string(manifest_.flattened_dim) + ": " + e.what());
    }
    if (scores.total() != kNumClasses) {
      throw ManifestError(manifest_.name + ": head output " + dims_string(scores) +
                          " does not match manifest output 1x4");
    }
  }

  BackendManifest manifest_;
  // cv::dnn::Net::forward mutates internal buffers.
  mutable std::mutex mu_;
  mutable cv::dnn::Net backbone_;
  mutable cv::dnn::Net head_;
};

}  // namespace

ClassifierPtr load_backend(const BackendManifest& manifest) {
  manifest.validate();
  return std::make_shared<const OnnxClassifier>(manifest);
}

}  // namespace fragc
