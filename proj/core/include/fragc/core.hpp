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
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fragc/error.hpp"

namespace fragc {

/// Frame-level action label. The numeric values are the wire ids used in
/// CSV output, probability vector layout and one-hot encoding.
enum class ActionClass : std::uint8_t {
  Kill = 0,
  Death = 1,
  NoAction = 2,
  Smoke = 3,
};

inline constexpr std::size_t kNumClasses = 4;
inline constexpr std::array<ActionClass, kNumClasses> kAllClasses = {
    ActionClass::Kill, ActionClass::Death, ActionClass::NoAction, ActionClass::Smoke};

inline constexpr double kDefaultThreshold = 0.75;

constexpr int wire_id(ActionClass c) noexcept { return static_cast<int>(c); }
constexpr std::size_t index_of(ActionClass c) noexcept { return static_cast<std::size_t>(c); }

/// Throws InvalidInput for ids outside 0..3.
ActionClass from_wire_id(int id);

/// Lower-case name used for directories, file names and CSV: "kill",
/// "death", "noaction", "smoke".
std::string_view class_name(ActionClass c) noexcept;

/// Accepts a wire id ("0".."3") or a class name, case-insensitive; also
/// tolerates "no_action" / "no action".
ActionClass parse_class(std::string_view text);

/// Four probabilities in wire-id order.
class ProbabilityVector {
 public:
  static constexpr double kSumTolerance = 1e-6;

  /// Throws InvalidInput unless every entry is in [0,1] and the sum is 1.
  explicit ProbabilityVector(const std::array<double, kNumClasses>& p);

  static ProbabilityVector uniform() noexcept;

  double operator[](ActionClass c) const noexcept { return p_[index_of(c)]; }
  const std::array<double, kNumClasses>& values() const noexcept { return p_; }

  /// Lowest wire id wins exact ties.
  ActionClass argmax() const noexcept;
  double max() const noexcept;

  friend bool operator==(const ProbabilityVector&, const ProbabilityVector&) = default;

 private:
  ProbabilityVector() = default;
  std::array<double, kNumClasses> p_{};
};

/// Index of the largest entry, lowest index on ties. Shared by every argmax
/// in the engine so tie handling cannot drift between stages.
std::size_t argmax_index(std::span<const double, kNumClasses> values) noexcept;

class OneHotLabel {
 public:
  /// Throws InvalidInput unless exactly one bit is 1 and the rest are 0.
  explicit OneHotLabel(const std::array<std::uint8_t, kNumClasses>& bits);

  const std::array<std::uint8_t, kNumClasses>& bits() const noexcept { return bits_; }
  ActionClass decode() const noexcept;

  friend bool operator==(const OneHotLabel&, const OneHotLabel&) = default;

 private:
  std::array<std::uint8_t, kNumClasses> bits_{};
};

OneHotLabel one_hot(ActionClass c) noexcept;
ActionClass decode_one_hot(const OneHotLabel& label) noexcept;

/// Max-shifted softmax. Non-finite logits throw InvalidInput.
ProbabilityVector softmax(const std::array<double, kNumClasses>& logits);

struct ModelScore {
  std::string model_name;
  ProbabilityVector probabilities;
};

/// One sampled frame after the ensemble stage.
struct FramePrediction {
  std::int64_t frame_index = 0;
  double timestamp_s = 0.0;
  std::vector<ModelScore> per_model;
  ProbabilityVector ensemble = ProbabilityVector::uniform();
  ActionClass label = ActionClass::NoAction;
  bool gated = false;
};

/// Per-class event tallies. NoAction is never a counted key.
class ActionCounts {
 public:
  ActionCounts() = default;

  /// Throws InvalidInput when asked to count NoAction.
  void increment(ActionClass c);
  void set(ActionClass c, std::uint64_t n);

  std::uint64_t get(ActionClass c) const noexcept { return n_[index_of(c)]; }
  std::uint64_t total() const noexcept;
  bool empty() const noexcept { return total() == 0; }

  /// (class, count) for every class with a non-zero count, in wire-id order.
  std::vector<std::pair<ActionClass, std::uint64_t>> nonzero() const;

  friend bool operator==(const ActionCounts&, const ActionCounts&) = default;

 private:
  std::array<std::uint64_t, kNumClasses> n_{};
};

std::string to_string(const ActionCounts& counts);

}  // namespace fragc
