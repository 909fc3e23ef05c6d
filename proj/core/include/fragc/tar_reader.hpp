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
#include <span>
#include <string>
#include <vector>

namespace fragc {

struct TarMember {
  std::string name;
  std::vector<std::uint8_t> data;
};

/// True when the buffer starts with a POSIX ustar header.
bool looks_like_tar(std::span<const std::uint8_t> bytes) noexcept;

/// Regular-file members of an uncompressed ustar/GNU tar archive, in
/// archive order. Directories, links and pax headers are skipped.
/// Truncated or corrupt archives throw InvalidInput.
std::vector<TarMember> read_tar(std::span<const std::uint8_t> bytes);

}  // namespace fragc
