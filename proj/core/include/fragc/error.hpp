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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace fragc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller handed us something outside an operation's domain.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// A model artifact could not be read or is unusable.
class LoadError : public Error {
 public:
  using Error::Error;
};

/// Manifest disagrees with itself or with the artifact it describes.
class ManifestError : public LoadError {
 public:
  using LoadError::LoadError;
};

/// Wraps a failure inside the analysis pipeline with the stage that raised
/// it and, when known, the sampled frame being processed.
class StageError : public Error {
 public:
  StageError(std::string stage, std::optional<std::int64_t> frame_index,
             const std::string& what);

  const std::string& stage() const noexcept { return stage_; }
  std::optional<std::int64_t> frame_index() const noexcept { return frame_index_; }

 private:
  std::string stage_;
  std::optional<std::int64_t> frame_index_;
};

}  // namespace fragc
