// Copyright 2026 The samplemark Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <vector>

#include "samplemark/hash.hpp"
#include "samplemark/types.hpp"

namespace samplemark {

// Pseudo-uniform value in [0, 1) keyed by a candidate and its left context.
//
// Bytes hashed: the last min(k, |context|) ids oldest-first, then the
// candidate, each as 4 bytes big-endian. The first 8 digest bytes are read
// big-endian as x and the result is x / 2^64 truncated to 53 bits, which
// keeps the value strictly below 1 after conversion to double.
inline double secret_number(TokenSpan context, Token candidate, int k) {
  const TokenSpan window = trailing_window(context, k);
  std::vector<std::uint8_t> bytes;
  bytes.reserve(4 * (window.size() + 1));
  append_tokens_be(bytes, window);
  append_u32_be(bytes, candidate);
  const std::uint64_t x = digest_prefix_u64(sha256(bytes));
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

}  // namespace samplemark
