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

#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>

namespace advscene
{

/// FNV-1a 64-bit over a byte sequence.
std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes);

/// FNV-1a 64-bit over the concatenation of each word's 8 little-endian bytes.
///
/// This is the mixing function used everywhere a reproducible value is
/// derived from integers (detector corruption directions, per-job sub-seeds),
/// so that ports in other languages can reproduce the same streams.
std::uint64_t hash64(std::initializer_list<std::uint64_t> words);

/// FNV-1a 64-bit over the UTF-8 bytes of `text`.
std::uint64_t hash64(std::string_view text);

}  // namespace advscene
