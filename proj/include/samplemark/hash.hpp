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

#include <openssl/evp.h>

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "samplemark/error.hpp"
#include "samplemark/types.hpp"

namespace samplemark {

using Sha256Digest = std::array<std::uint8_t, 32>;

inline Sha256Digest sha256(std::span<const std::uint8_t> bytes) {
  Sha256Digest digest{};
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &length,
                 EVP_sha256(), nullptr) != 1 ||
      length != digest.size()) {
    throw Error(ErrorCode::kDataError, "SHA-256 evaluation failed");
  }
  return digest;
}

inline void append_u32_be(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

inline void append_u64_be(std::vector<std::uint8_t>& out, std::uint64_t v) {
  append_u32_be(out, static_cast<std::uint32_t>(v >> 32));
  append_u32_be(out, static_cast<std::uint32_t>(v));
}

// 4 bytes big-endian per id, in sequence order.
inline void append_tokens_be(std::vector<std::uint8_t>& out, TokenSpan tokens) {
  out.reserve(out.size() + 4 * tokens.size());
  for (Token t : tokens) append_u32_be(out, t);
}

inline std::uint64_t digest_prefix_u64(const Sha256Digest& digest) {
  std::uint64_t x = 0;
  for (std::size_t i = 0; i < 8; ++i) x = (x << 8) | digest[i];
  return x;
}

// Seed for context-keyed streams: first 8 digest bytes of the serialized
// window, big-endian.
inline std::uint64_t context_seed(TokenSpan window) {
  std::vector<std::uint8_t> bytes;
  append_tokens_be(bytes, window);
  return digest_prefix_u64(sha256(bytes));
}

inline std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

}  // namespace samplemark
