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

#include "fragc/core.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace fragc {

StageError::StageError(std::string stage, std::optional<std::int64_t> frame_index,
                       const std::string& what)
    : Error([&] {
        std::string msg = stage;
        if (frame_index) msg += " (frame " + std::to_string(*frame_index) + ")";
        return msg + ": " + what;
      }()),
      stage_(std::move(stage)),
      frame_index_(frame_index) {}

ActionClass from_wire_id(int id) {
  if (id < 0 || id >= static_cast<int>(kNumClasses)) {
    throw InvalidInput("action class wire id out of range: " + std::to_string(id));
  }
  return static_cast<ActionClass>(id);
}

std::string_view class_name(ActionClass c) noexcept {
  switch (c) {
    case ActionClass::Kill: return "kill";
    case ActionClass::Death: return "death";
    case ActionClass::NoAction: return "noaction";
    case ActionClass::Smoke: return "smoke";
  }
  return "unknown";
}

ActionClass parse_class(std::string_view text) {
  std::string key;
  for (char ch : text) {
    if (ch == '_' || ch == ' ' || ch == '-') continue;
    key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  if (key.size() == 1 && key[0] >= '0' && key[0] <= '3') return from_wire_id(key[0] - '0');
  for (ActionClass c : kAllClasses) {
    if (key == class_name(c)) return c;
  }
  throw InvalidInput("unknown action class: '" + std::string(text) + "'");
}

std::size_t argmax_index(std::span<const double, kNumClasses> values) noexcept {
  std::size_t best = 0;
  for (std::size_t i = 1; i < kNumClasses; ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

ProbabilityVector::ProbabilityVector(const std::array<double, kNumClasses>& p) : p_(p) {
  double sum = 0.0;
  for (double v : p_) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw InvalidInput("probability entry outside [0,1]: " + std::to_string(v));
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw InvalidInput("probabilities sum to " + std::to_string(sum) + ", expected 1");
  }
}

ProbabilityVector ProbabilityVector::uniform() noexcept {
  ProbabilityVector v;
  v.p_.fill(1.0 / kNumClasses);
  return v;
}

ActionClass ProbabilityVector::argmax() const noexcept {
  return static_cast<ActionClass>(argmax_index(p_));
}

double ProbabilityVector::max() const noexcept { return *std::max_element(p_.begin(), p_.end()); }

OneHotLabel::OneHotLabel(const std::array<std::uint8_t, kNumClasses>& bits) : bits_(bits) {
  int ones = 0;
  for (auto b : bits_) {
    if (b > 1) throw InvalidInput("one-hot entries must be 0 or 1");
    ones += b;
  }
  if (ones != 1) throw InvalidInput("one-hot label must have exactly one set bit");
}

ActionClass OneHotLabel::decode() const noexcept {
  return static_cast<ActionClass>(std::find(bits_.begin(), bits_.end(), 1) - bits_.begin());
}

OneHotLabel one_hot(ActionClass c) noexcept {
  std::array<std::uint8_t, kNumClasses> bits{};
  bits[index_of(c)] = 1;
  return OneHotLabel(bits);
}

ActionClass decode_one_hot(const OneHotLabel& label) noexcept { return label.decode(); }

ProbabilityVector softmax(const std::array<double, kNumClasses>& logits) {
  for (double x : logits) {
    if (!std::isfinite(x)) throw InvalidInput("softmax: non-finite logit");
  }
  const double top = *std::max_element(logits.begin(), logits.end());
  std::array<double, kNumClasses> e{};
  double sum = 0.0;
  for (std::size_t i = 0; i < kNumClasses; ++i) {
    e[i] = std::exp(logits[i] - top);
    sum += e[i];
  }
  for (double& v : e) v /= sum;
  return ProbabilityVector(e);
}

void ActionCounts::increment(ActionClass c) {
  if (c == ActionClass::NoAction) throw InvalidInput("NoAction is never counted");
  ++n_[index_of(c)];
}

void ActionCounts::set(ActionClass c, std::uint64_t n) {
  if (c == ActionClass::NoAction && n != 0) throw InvalidInput("NoAction is never counted");
  n_[index_of(c)] = n;
}

std::uint64_t ActionCounts::total() const noexcept {
  std::uint64_t t = 0;
  for (auto n : n_) t += n;
  return t;
}

std::vector<std::pair<ActionClass, std::uint64_t>> ActionCounts::nonzero() const {
  std::vector<std::pair<ActionClass, std::uint64_t>> out;
  for (ActionClass c : kAllClasses) {
    if (n_[index_of(c)] != 0) out.emplace_back(c, n_[index_of(c)]);
  }
  return out;
}

std::string to_string(const ActionCounts& counts) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (auto [c, n] : counts.nonzero()) {
    if (!first) os << ", ";
    os << class_name(c) << ": " << n;
    first = false;
  }
  os << '}';
  return os.str();
}

}  // namespace fragc
