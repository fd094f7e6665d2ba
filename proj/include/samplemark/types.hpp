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
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "samplemark/error.hpp"

namespace samplemark {

// Vocabulary index. Validity against a vocabulary is checked where a
// vocabulary is in scope (LM, attack, green partition).
using Token = std::uint32_t;

using TokenSpan = std::span<const Token>;

enum class SequenceRole { kPrompt, kCompletion, kFullText };

// Ordered token ids plus a marker telling what part of a generation they are.
struct TokenSequence {
  std::vector<Token> tokens;
  SequenceRole role = SequenceRole::kFullText;

  TokenSequence() = default;
  explicit TokenSequence(std::vector<Token> ids,
                         SequenceRole r = SequenceRole::kFullText)
      : tokens(std::move(ids)), role(r) {}

  std::size_t size() const noexcept { return tokens.size(); }
  bool empty() const noexcept { return tokens.empty(); }
  TokenSpan span() const noexcept { return tokens; }
  operator TokenSpan() const noexcept { return tokens; }  // NOLINT
  Token operator[](std::size_t i) const { return tokens[i]; }

  friend bool operator==(const TokenSequence&,
                         const TokenSequence&) = default;
};

// Probability vector over a vocabulary: non-negative, sums to one within
// kSumTolerance.
class ProbDistribution {
 public:
  static constexpr double kSumTolerance = 1e-9;

  ProbDistribution() = default;

  // Validates and takes ownership of `probs`.
  explicit ProbDistribution(std::vector<double> probs)
      : probs_(std::move(probs)) {
    if (probs_.empty()) {
      throw Error(ErrorCode::kInvalidDistribution, "empty probability vector");
    }
    double sum = 0.0;
    for (double p : probs_) {
      if (!(p >= 0.0) || !std::isfinite(p)) {
        throw Error(ErrorCode::kInvalidDistribution,
                    "negative or non-finite probability");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kSumTolerance) {
      throw Error(ErrorCode::kInvalidDistribution,
                  "probabilities sum to " + std::to_string(sum));
    }
  }

  // Normalizes non-negative weights into a distribution.
  static ProbDistribution from_weights(std::vector<double> weights) {
    double sum = 0.0;
    for (double w : weights) {
      if (!(w >= 0.0) || !std::isfinite(w)) {
        throw Error(ErrorCode::kInvalidDistribution,
                    "negative or non-finite weight");
      }
      sum += w;
    }
    if (!(sum > 0.0)) {
      throw Error(ErrorCode::kDegenerateDistribution, "all weights are zero");
    }
    for (double& w : weights) w /= sum;
    return ProbDistribution(std::move(weights));
  }

  static ProbDistribution uniform(std::size_t vocab_size) {
    return ProbDistribution(
        std::vector<double>(vocab_size, 1.0 / static_cast<double>(vocab_size)));
  }

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const noexcept { return probs_; }

  std::size_t support_size() const noexcept {
    std::size_t n = 0;
    for (double p : probs_) n += p > 0.0 ? 1 : 0;
    return n;
  }

 private:
  std::vector<double> probs_;
};

enum class SamplingMode { kWithReplacement, kWithoutReplacement };

inline std::string_view sampling_mode_name(SamplingMode mode) {
  return mode == SamplingMode::kWithReplacement ? "with_replacement"
                                                : "without_replacement";
}

struct WatermarkParams {
  int y = 5;  // sampling count
  int k = 1;  // context window
  SamplingMode mode = SamplingMode::kWithoutReplacement;
  int top_k = 40;
  double temperature = 1.0;
  double threshold_u = 4.0;

  void validate() const {
    if (y < 1) throw Error(ErrorCode::kInvalidArgument, "y must be >= 1");
    if (k < 0) throw Error(ErrorCode::kInvalidArgument, "k must be >= 0");
    if (top_k < 1) {
      throw Error(ErrorCode::kInvalidArgument, "top_k must be >= 1");
    }
    if (!(temperature > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "temperature must be > 0");
    }
  }

  friend bool operator==(const WatermarkParams&, const WatermarkParams&) = default;
};

// Trailing window of at most `k` tokens, oldest first.
inline TokenSpan trailing_window(TokenSpan context, int k) {
  const std::size_t width =
      std::min(context.size(), static_cast<std::size_t>(k < 0 ? 0 : k));
  return context.subspan(context.size() - width);
}

}  // namespace samplemark
