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

// Incremental decoding interface for host pipelines that own the model and
// hand over raw logits one step at a time.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "samplemark/detector.hpp"
#include "samplemark/distribution.hpp"
#include "samplemark/error.hpp"
#include "samplemark/rng.hpp"
#include "samplemark/sampler.hpp"
#include "samplemark/types.hpp"

namespace samplemark {

class StepState {
 public:
  StepState(const WatermarkParams& params, std::size_t vocab_size,
            std::uint64_t rng_seed, std::vector<Token> context = {})
      : params_(params), vocab_size_(vocab_size), rng_(rng_seed),
        context_(std::move(context)) {
    params_.validate();
    if (vocab_size_ == 0) throw Error(ErrorCode::kInvalidArgument, "vocab_size must be >= 1");
  }

  // softmax -> temperature/top-k -> candidate selection; appends and returns
  // the chosen token.
  Token step(std::span<const double> logits) {
    if (logits.size() != vocab_size_) {
      throw Error(ErrorCode::kInvalidArgument,
                  "logits length " + std::to_string(logits.size()) +
                      " != vocab_size " + std::to_string(vocab_size_));
    }
    const ProbDistribution dist =
        transform_distribution(softmax(logits), params_.top_k, params_.temperature);
    const Token t = select_next_token(dist, context_, params_, rng_);
    context_.push_back(t);
    return t;
  }

  const std::vector<Token>& context() const noexcept { return context_; }
  const WatermarkParams& params() const noexcept { return params_; }
  const RandomStream& rng() const noexcept { return rng_; }

 private:
  WatermarkParams params_;
  std::size_t vocab_size_;
  RandomStream rng_;
  std::vector<Token> context_;
};

inline DetectionReport detect_ids(std::span<const Token> ids, int k, double threshold_u) {
  return detect(ids, k, threshold_u);
}

}  // namespace samplemark
