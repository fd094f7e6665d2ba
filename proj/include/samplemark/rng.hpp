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
#include <random>
#include <string_view>

namespace samplemark {

// Portable random stream.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The distributions from <random> are implementation-defined, so
// the two conversions used by the library are spelled out here:
//   uniform()    top 53 bits of one engine output, times 2^-53, in [0, 1)
//   bounded(n)   rejection of outputs below (2^64 - n) mod n, then x mod n
// Changing either changes every golden vector; bump kAlgorithm if you do.
class RandomStream {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64/u53/modrej";

  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  result_type operator()() { return engine_(); }

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n). n must be positive.
  std::uint64_t bounded(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t x = engine_();
      if (x >= threshold) return x % n;
    }
  }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer. Used for cheap deterministic mixing where a
// cryptographic hash is not required (synthetic LM logits, seed expansion).
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace samplemark
