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
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "samplemark/distribution.hpp"
#include "samplemark/error.hpp"
#include "samplemark/language_model.hpp"
#include "samplemark/rng.hpp"
#include "samplemark/types.hpp"

namespace samplemark {

enum class AttackPolicy { kRandomDifferent, kLmProposal };

inline std::string_view attack_policy_name(AttackPolicy p) {
  return p == AttackPolicy::kRandomDifferent ? "random_different"
                                             : "lm_proposal";
}

inline std::optional<AttackPolicy> parse_attack_policy(std::string_view s) {
  if (s == "random_different") return AttackPolicy::kRandomDifferent;
  if (s == "lm_proposal") return AttackPolicy::kLmProposal;
  return std::nullopt;
}

struct AttackParams {
  double rate_t = 0.0;
  AttackPolicy policy = AttackPolicy::kRandomDifferent;
  std::uint64_t attack_seed = 0;

  friend bool operator==(const AttackParams&, const AttackParams&) = default;
};

// floor(rate * n), with a 1e-9 guard so 0.29 * 100 counts as 29.
inline std::size_t attacked_position_count(double rate, std::size_t n) {
  return static_cast<std::size_t>(
      std::floor(rate * static_cast<double>(n) + 1e-9));
}

namespace detail {

inline Token random_different(Token original, std::size_t vocab_size,
                              RandomStream& rng) {
  const auto r = static_cast<Token>(rng.bounded(vocab_size - 1));
  return r >= original ? r + 1 : r;
}

}  // namespace detail

// Replaces floor(rate_t * |text|) distinct, uniformly chosen positions with a
// token different from the original. Positions are rewritten left to right,
// so lm_proposal sees earlier substitutions in its context. If the LM puts
// all its mass on the original token, that position falls back to
// random_different.
inline TokenSequence substitution_attack(const TokenSequence& text,
                                         const AttackParams& params,
                                         std::size_t vocab_size,
                                         const LanguageModel* lm = nullptr) {
  if (!(params.rate_t >= 0.0 && params.rate_t <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "rate_t must lie in [0, 1]");
  }
  if (text.empty()) throw Error(ErrorCode::kInvalidArgument, "empty text");
  if (vocab_size < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "vocab_size < 2 cannot guarantee a different token");
  }
  if (params.policy == AttackPolicy::kLmProposal &&
      (lm == nullptr || lm->vocab_size() != vocab_size)) {
    throw Error(ErrorCode::kInvalidArgument,
                "lm_proposal needs an LM over the same vocabulary");
  }
  for (Token t : text.tokens) {
    if (t >= vocab_size) {
      throw Error(ErrorCode::kDataError,
                  "token " + std::to_string(t) + " outside vocabulary");
    }
  }

  RandomStream rng(params.attack_seed);
  const std::size_t n = text.size();
  const std::size_t m = attacked_position_count(params.rate_t, n);
  std::vector<std::size_t> positions(n);
  std::iota(positions.begin(), positions.end(), std::size_t{0});
  for (std::size_t i = 0; i < m; ++i) {
    std::swap(positions[i], positions[i + rng.bounded(n - i)]);
  }
  positions.resize(m);
  std::sort(positions.begin(), positions.end());

  TokenSequence out = text;
  for (std::size_t pos : positions) {
    const Token original = out.tokens[pos];
    if (params.policy == AttackPolicy::kRandomDifferent) {
      out.tokens[pos] = detail::random_different(original, vocab_size, rng);
      continue;
    }
    const ProbDistribution dist =
        lm->next_distribution(TokenSpan(out.tokens).first(pos));
    std::vector<double> weights(dist.probs().begin(), dist.probs().end());
    weights[original] = 0.0;
    double rest = 0.0;
    for (double w : weights) rest += w;
    out.tokens[pos] =
        rest > 0.0 ? static_cast<Token>(draw_index(weights, rng.uniform()))
                   : detail::random_different(original, vocab_size, rng);
  }
  return out;
}

}  // namespace samplemark
