// Copyright 2026 The advscene Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "advscene/hash.hpp"

namespace advscene
{
namespace
{
constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

inline std::uint64_t mix(std::uint64_t h, std::uint8_t byte)
{
  h ^= byte;
  return h * kFnvPrime;
}
}  // namespace

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes)
{
  std::uint64_t h = kFnvOffset;
  for (const auto b : bytes) {
    h = mix(h, b);
  }
  return h;
}

std::uint64_t hash64(std::initializer_list<std::uint64_t> words)
{
  std::uint64_t h = kFnvOffset;
  for (const auto w : words) {
    for (int shift = 0; shift < 64; shift += 8) {
      h = mix(h, static_cast<std::uint8_t>((w >> shift) & 0xffU));
    }
  }
  return h;
}

std::uint64_t hash64(std::string_view text)
{
  std::uint64_t h = kFnvOffset;
  for (const char c : text) {
    h = mix(h, static_cast<std::uint8_t>(c));
  }
  return h;
}

}  // namespace advscene
