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

#include <cstddef>
#include <vector>

#include "samplemark/distribution.hpp"
#include "samplemark/error.hpp"
#include "samplemark/rng.hpp"
#include "samplemark/secret_number.hpp"
#include "samplemark/types.hpp"

namespace samplemark {

// Draws the candidate tokens for one watermarked step, in draw order.
//
// With replacement: y independent draws. Without replacement: repeated
// draw-remove over the support, renormalizing implicitly through the running
// total; if the support holds fewer than y tokens, all of it is returned.
// Each draw consumes one uniform from `rng`.
inline std::vector<Token> sample_candidates(const ProbDistribution& dist,
                                            int y, SamplingMode mode,
                                            RandomStream& rng) {
  if (y < 1) throw Error(ErrorCode::kInvalidArgument, "y must be >= 1");

  std::vector<Token> ids;
  std::vector<double> weights;
  const std::span<const double> probs = dist.probs();
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] > 0.0) {
      ids.push_back(static_cast<Token>(i));
      weights.push_back(probs[i]);
    }
  }
  if (ids.empty()) {
    throw Error(ErrorCode::kDegenerateDistribution, "empty support");
  }

  std::vector<Token> out;
  out.reserve(static_cast<std::size_t>(y));
  if (mode == SamplingMode::kWithReplacement) {
    for (int i = 0; i < y; ++i) out.push_back(ids[draw_index(weights, rng.uniform())]);
    return out;
  }
  const std::size_t draws = std::min(ids.size(), static_cast<std::size_t>(y));
  for (std::size_t i = 0; i < draws; ++i) {
    const std::size_t idx = draw_index(weights, rng.uniform());
    out.push_back(ids[idx]);
    ids.erase(ids.begin() + static_cast<std::ptrdiff_t>(idx));
    weights.erase(weights.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return out;
}

struct Selection {
  Token token = 0;
  double secret = 0.0;
  std::size_t effective_y = 0;  // number of candidates actually drawn
};

// Draws candidates and returns the one with the largest secret number.
// `context` is the full text so far. Ties go to the smaller id; they only
// arise between duplicate candidates, which share a secret number.
inline Selection select_next_token_detailed(const ProbDistribution& dist,
                                            TokenSpan context,
                                            const WatermarkParams& params,
                                            RandomStream& rng) {
  const std::vector<Token> candidates =
      sample_candidates(dist, params.y, params.mode, rng);
  Selection best;
  best.effective_y = candidates.size();
  bool first = true;
  for (Token c : candidates) {
    const double s = secret_number(context, c, params.k);
    if (first || s > best.secret || (s == best.secret && c < best.token)) {
      best.token = c;
      best.secret = s;
      first = false;
    }
  }
  return best;
}

inline Token select_next_token(const ProbDistribution& dist, TokenSpan context,
                               const WatermarkParams& params,
                               RandomStream& rng) {
  return select_next_token_detailed(dist, context, params, rng).token;
}

}  // namespace samplemark
