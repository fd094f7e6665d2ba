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

#include <functional>
#include <optional>
#include <utility>

#include "samplemark/types.hpp"

namespace samplemark {

using SimilarityFn = std::function<double(TokenSpan reference, TokenSpan candidate)>;

// Registration point for an external text-similarity scorer (for example a
// sentence-embedding model). Nothing is registered by default; reports leave
// the similarity column out when score() returns nullopt.
class SimilarityScorer {
 public:
  SimilarityScorer() = default;
  explicit SimilarityScorer(SimilarityFn fn) : fn_(std::move(fn)) {}

  void set(SimilarityFn fn) { fn_ = std::move(fn); }
  void reset() { fn_ = nullptr; }
  bool available() const noexcept { return static_cast<bool>(fn_); }

  std::optional<double> score(TokenSpan reference, TokenSpan candidate) const {
    if (!fn_) return std::nullopt;
    return fn_(reference, candidate);
  }

 private:
  SimilarityFn fn_;
};

}  // namespace samplemark
