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

#include "fragc/tar_reader.hpp"

#include <algorithm>
#include <cstring>

#include "fragc/error.hpp"

namespace fragc {
namespace {

constexpr std::size_t kBlock = 512;

std::string field(std::span<const std::uint8_t> block, std::size_t off, std::size_t len) {
  const auto* p = reinterpret_cast<const char*>(block.data() + off);
  return std::string(p, strnlen(p, len));
}

std::uint64_t octal(std::span<const std::uint8_t> block, std::size_t off, std::size_t len) {
  std::uint64_t v = 0;
  for (std::size_t i = off; i < off + len; ++i) {
    const char c = static_cast<char>(block[i]);
    if (c == '\0' || c == ' ') {
      if (v != 0 || i > off) break;
      continue;
    }
    if (c < '0' || c > '7') throw InvalidInput("tar: bad octal field in header");
    v = v * 8 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

bool checksum_ok(std::span<const std::uint8_t> block) {
  const std::uint64_t stored = octal(block, 148, 8);
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < kBlock; ++i) sum += (i >= 148 && i < 156) ? ' ' : block[i];
  return sum == stored;
}

}  // namespace

bool looks_like_tar(std::span<const std::uint8_t> bytes) noexcept {
  return bytes.size() >= kBlock && std::memcmp(bytes.data() + 257, "ustar", 5) == 0;
}

std::vector<TarMember> read_tar(std::span<const std::uint8_t> bytes) {
  std::vector<TarMember> out;
  std::size_t pos = 0;
  while (pos + kBlock <= bytes.size()) {
    const auto block = bytes.subspan(pos, kBlock);
    if (std::all_of(block.begin(), block.end(), [](std::uint8_t b) { return b == 0; })) return out;
    if (!checksum_ok(block)) throw InvalidInput("tar: header checksum mismatch at offset " + std::to_string(pos));

    std::string name = field(block, 0, 100);
    if (std::memcmp(block.data() + 257, "ustar", 5) == 0) {
      const std::string prefix = field(block, 345, 155);
      if (!prefix.empty()) name = prefix + "/" + name;
    }
    const std::uint64_t size = octal(block, 124, 12);
    const char type = static_cast<char>(block[156]);
    pos += kBlock;
    if (size > bytes.size() - pos) throw InvalidInput("tar: member '" + name + "' is truncated");

    if (type == '0' || type == '\0') {
      out.push_back(TarMember{name, {bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                                     bytes.begin() + static_cast<std::ptrdiff_t>(pos + size)}});
    }
    pos += (size + kBlock - 1) / kBlock * kBlock;
  }
  // A missing end-of-archive marker is tolerated; a partial block is not.
  if (pos != bytes.size()) throw InvalidInput("tar: archive is truncated");
  return out;
}

}  // namespace fragc
