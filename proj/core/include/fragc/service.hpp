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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "fragc/backend.hpp"
#include "fragc/counter.hpp"
#include "fragc/ingest.hpp"

namespace fragc {

/// Version string reported by `GET /health` and `fragc --version`.
std::string_view version() noexcept;

struct ServiceConfig {
  std::string host = "0.0.0.0";
  int port = 8080;
  std::vector<ClassifierPtr> backends;
  CounterConfig counter;
  DecoderConfig decoder;
  std::size_t max_upload_bytes = std::size_t{512} * 1024 * 1024;
  /// Where `POST /collect` writes labelled frames.
  std::filesystem::path collect_dir = "collected";
  std::size_t worker_threads = 8;
};

/// HTTP front end for the analysis pipeline.
///
///   GET  /health   version, backend names, requests served
///   POST /analyze  multipart upload -> AnalysisReport (?format=json|csv)
///   POST /collect  multipart upload -> analyze + write labelled frames,
///                  returns the dataset manifest
///
/// The upload is a `video` file (decoded by the external decoder), an
/// `archive` tar of `<stem>_<NNNNNN>.png` frames, one or more `frame`
/// parts, or a `file` part whose type is sniffed. Query parameters `fps`,
/// `threshold` and `count_mode` override the defaults per request.
///
/// Each request runs its own pipeline and counter; backends are shared
/// read-only.
class Service {
 public:
  explicit Service(ServiceConfig config);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds the configured host/port (port 0 picks a free one) and returns
  /// the bound port. Throws IoError if the socket cannot be bound.
  int bind();
  /// Serves until stop() is called. bind() must have succeeded.
  void serve();
  void stop();
  /// Blocks until the listener accepts connections.
  void wait_until_ready() const;

  std::uint64_t requests_served() const noexcept;
  const ServiceConfig& config() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace fragc
