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

// Greenlist ("Maryland") watermark, used as the comparison baseline: a
// context-seeded fraction gamma of the vocabulary gets its logits raised by
// delta at generation time, and detection counts green tokens.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "samplemark/detector.hpp"
#include "samplemark/distribution.hpp"
#include "samplemark/error.hpp"
#include "samplemark/generator.hpp"
#include "samplemark/hash.hpp"
#include "samplemark/language_model.hpp"
#include "samplemark/rng.hpp"
#include "samplemark/types.hpp"

namespace samplemark {

struct MwmParams {
  double gamma = 0.25;
  double delta = 2.0;
  int k = 1;
  int top_k = 40;
  double temperature = 1.0;
  double threshold_u = 4.0;

  void validate() const {
    if (!(gamma > 0.0 && gamma < 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "gamma must lie in (0, 1)");
    }
    if (!(delta >= 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "delta must be >= 0");
    }
    if (k < 0) throw Error(ErrorCode::kInvalidArgument, "k must be >= 0");
    if (top_k < 1) {
      throw Error(ErrorCode::kInvalidArgument, "top_k must be >= 1");
    }
    if (!(temperature > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "temperature must be > 0");
    }
  }

  friend bool operator==(const MwmParams&, const MwmParams&) = default;
};

class GreenList {
 public:
  GreenList(std::vector<Token> members, std::size_t vocab_size)
      : members_(std::move(members)), mask_(vocab_size, false) {
    for (Token t : members_) mask_[t] = true;
    std::sort(members_.begin(), members_.end());
  }

  bool contains(Token t) const { return t < mask_.size() && mask_[t]; }
  std::size_t size() const noexcept { return members_.size(); }
  const std::vector<Token>& members() const noexcept { return members_; }

 private:
  std::vector<Token> members_;  // sorted
  std::vector<bool> mask_;
};

inline std::size_t green_list_size(double gamma, std::size_t vocab_size) {
  return static_cast<std::size_t>(
      std::floor(gamma * static_cast<double>(vocab_size)));
}

// First floor(gamma * vocab_size) entries of a forward Fisher-Yates shuffle
// of [0, vocab_size). The shuffle runs on a RandomStream seeded with the
// SHA-256 prefix of the trailing k context ids (same serialization as the
// secret numbers). Only the first |green| swaps are performed; later swaps
// never touch the prefix.
inline GreenList green_partition(TokenSpan context, int k, double gamma,
                                 std::size_t vocab_size) {
  if (vocab_size < 1) {
    throw Error(ErrorCode::kInvalidArgument, "vocab_size must be >= 1");
  }
  RandomStream rng(context_seed(trailing_window(context, k)));
  std::vector<Token> perm(vocab_size);
  std::iota(perm.begin(), perm.end(), Token{0});
  const std::size_t green = green_list_size(gamma, vocab_size);
  for (std::size_t i = 0; i < green; ++i) {
    const std::size_t j = i + rng.bounded(vocab_size - i);
    std::swap(perm[i], perm[j]);
  }
  perm.resize(green);
  return GreenList(std::move(perm), vocab_size);
}

// Adds delta to the log-probability of every green token and renormalizes.
// delta == 0 returns the input untouched.
inline ProbDistribution apply_green_bias(const ProbDistribution& dist,
                                         const GreenList& green,
                                         double delta) {
  if (delta == 0.0) return dist;
  const std::span<const double> probs = dist.probs();
  std::vector<double> logits(probs.size());
  double max_logit = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < probs.size(); ++i) {
    logits[i] = probs[i] > 0.0 ? std::log(probs[i])
                               : -std::numeric_limits<double>::infinity();
    if (green.contains(static_cast<Token>(i))) logits[i] += delta;
    max_logit = std::max(max_logit, logits[i]);
  }
  std::vector<double> weights(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    weights[i] = std::exp(logits[i] - max_logit);
  }
  return ProbDistribution::from_weights(std::move(weights));
}

inline TokenSequence mwm_generate(const LanguageModel& lm,
                                  const TokenSequence& prompt, int max_new,
                                  const MwmParams& params,
                                  std::uint64_t rng_seed) {
  params.validate();
  const std::size_t vocab = lm.vocab_size();
  return detail::decode(
      lm, prompt, max_new, rng_seed,
      [&](const ProbDistribution& raw, TokenSpan text, RandomStream& rng) {
        const ProbDistribution biased =
            params.delta == 0.0
                ? raw
                : apply_green_bias(
                      raw, green_partition(text, params.k, params.gamma, vocab),
                      params.delta);
        return sample_token(
            transform_distribution(biased, params.top_k, params.temperature),
            rng);
      });
}

struct GreenCount {
  std::size_t green = 0;
  std::size_t scored = 0;
};

inline GreenCount count_green(TokenSpan text, int k, double gamma,
                              std::size_t vocab_size) {
  if (k < 0) throw Error(ErrorCode::kInvalidArgument, "k must be >= 0");
  const auto first = static_cast<std::size_t>(k);
  if (text.size() <= first) {
    throw Error(ErrorCode::kInsufficientTokens,
                "need more than " + std::to_string(k) + " tokens, got " +
                    std::to_string(text.size()));
  }
  GreenCount count;
  for (std::size_t r = first; r < text.size(); ++r) {
    if (text[r] >= vocab_size) {
      throw Error(ErrorCode::kDataError,
                  "token " + std::to_string(text[r]) + " outside vocabulary");
    }
    const GreenList green =
        green_partition(text.first(r), k, gamma, vocab_size);
    count.green += green.contains(text[r]) ? 1 : 0;
    ++count.scored;
  }
  return count;
}

// (g - gamma T) / sqrt(T gamma (1 - gamma)).
inline double green_z_score(std::size_t green, std::size_t scored,
                            double gamma) {
  if (scored == 0) {
    throw Error(ErrorCode::kInsufficientTokens, "z-score needs scored >= 1");
  }
  const double t = static_cast<double>(scored);
  return (static_cast<double>(green) - gamma * t) /
         std::sqrt(t * gamma * (1.0 - gamma));
}

inline DetectionReport mwm_detect(TokenSpan text, const MwmParams& params,
                                  std::size_t vocab_size) {
  params.validate();
  const GreenCount count = count_green(text, params.k, params.gamma, vocab_size);
  DetectionReport report;
  report.method = DetectorMethod::kMwm;
  report.sna = static_cast<double>(count.green) /
               static_cast<double>(count.scored);
  report.n_scored = count.scored;
  report.z = green_z_score(count.green, count.scored, params.gamma);
  report.threshold_u = params.threshold_u;
  report.verdict = verdict_for(report.z, params.threshold_u);
  return report;
}

}  // namespace samplemark
