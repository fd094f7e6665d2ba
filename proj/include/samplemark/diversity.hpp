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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "samplemark/error.hpp"
#include "samplemark/types.hpp"

namespace samplemark {

enum class DiversityFormula {
  // -ln(1 - prod u_n), product clamped to <= 1 - clamp_epsilon.
  kTableConsistent,
  // -ln(1 - prod (1 - u_n)).
  kPaperLiteral,
};

struct DiversityConfig {
  int max_order = 4;
  DiversityFormula formula = DiversityFormula::kTableConsistent;
  double clamp_epsilon = 1e-6;
};

// Distinct n-grams over total n-grams.
inline double unique_ngram_fraction(TokenSpan text, std::size_t n) {
  if (n == 0 || text.size() < n) {
    throw Error(ErrorCode::kInsufficientTokens,
                "text shorter than n-gram order " + std::to_string(n));
  }
  std::set<std::vector<Token>> seen;
  const std::size_t total = text.size() - n + 1;
  for (std::size_t i = 0; i < total; ++i) {
    seen.emplace(text.begin() + static_cast<std::ptrdiff_t>(i),
                 text.begin() + static_cast<std::ptrdiff_t>(i + n));
  }
  return static_cast<double>(seen.size()) / static_cast<double>(total);
}

inline double diversity(TokenSpan text, const DiversityConfig& config = {}) {
  if (config.max_order < 1) {
    throw Error(ErrorCode::kInvalidArgument, "max_order must be >= 1");
  }
  if (text.size() < static_cast<std::size_t>(config.max_order)) {
    throw Error(ErrorCode::kInsufficientTokens,
                "text shorter than max_order");
  }
  double product = 1.0;
  for (int n = 1; n <= config.max_order; ++n) {
    const double u = unique_ngram_fraction(text, static_cast<std::size_t>(n));
    product *= config.formula == DiversityFormula::kTableConsistent ? u
                                                                    : 1.0 - u;
  }
  if (config.formula == DiversityFormula::kTableConsistent) {
    product = std::min(product, 1.0 - config.clamp_epsilon);
  }
  return -std::log(1.0 - product);
}

}  // namespace samplemark
