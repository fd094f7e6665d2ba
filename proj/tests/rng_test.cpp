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

#include <cstdint>
#include <vector>

#include <gtest/gtest.h>

#include "golden_values.hpp"
#include "samplemark/parallel.hpp"
#include "samplemark/rng.hpp"

namespace samplemark {
namespace {

TEST(RandomStream, EngineMatchesStandardSequence) {
  RandomStream rng(5489);
  std::uint64_t x = 0;
  for (int i = 0; i < 10000; ++i) x = rng();
  EXPECT_EQ(x, golden::kMt64Output10000);
}

TEST(RandomStream, UniformMatchesReference) {
  RandomStream rng(42);
  EXPECT_EQ(rng.uniform(), golden::kUniformSeed42First);
  EXPECT_EQ(rng.uniform(), golden::kUniformSeed42Second);
}

TEST(RandomStream, BoundedMatchesReference) {
  RandomStream rng(7);
  for (std::uint64_t expected : golden::kBoundedSeed7N10) {
    EXPECT_EQ(rng.bounded(10), expected);
  }
}

TEST(RandomStream, UniformStaysInHalfOpenUnitInterval) {
  RandomStream rng(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(RandomStream, BoundedOfOneIsZero) {
  RandomStream rng(3);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(rng.bounded(1), 0u);
}

TEST(RandomStream, SameSeedSameStream) {
  RandomStream a(99), b(99);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
}

TEST(Mix64, IsDeterministicAndSpreads) {
  static_assert(mix64(0) == mix64(0));
  EXPECT_NE(mix64(1), mix64(2));
  EXPECT_NE(mix64(0), 0u);
}

TEST(ParallelMap, KeepsIndexOrder) {
  const auto out = parallel_map(100, [](std::size_t i) { return i * i; }, 4);
  ASSERT_EQ(out.size(), 100u);
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], i * i);
}

TEST(ParallelMap, RethrowsWorkerException) {
  EXPECT_THROW(parallel_map(
                   10,
                   [](std::size_t i) -> int {
                     if (i == 7) throw std::runtime_error("boom");
                     return 0;
                   },
                   3),
               std::runtime_error);
}

TEST(ParallelMap, EmptyInput) {
  EXPECT_TRUE(parallel_map(0, [](std::size_t) { return 1; }).empty());
}

}  // namespace
}  // namespace samplemark
