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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "samplemark/distribution.hpp"
#include "samplemark/error.hpp"
#include "samplemark/language_model.hpp"
#include "samplemark/rng.hpp"
#include "samplemark/types.hpp"

namespace samplemark {

struct SyntheticLmParams {
  std::size_t vocab_size = 1000;
  int order = 2;
  // Logits are standard-normal scores divided by this; small values give
  // peaky distributions, large values flat ones.
  double concentration = 0.2;
  std::uint64_t model_seed = 1;

  void validate() const {
    if (vocab_size < 2) {
      throw Error(ErrorCode::kInvalidArgument, "vocab_size must be >= 2");
    }
    if (order < 0) throw Error(ErrorCode::kInvalidArgument, "order must be >= 0");
    if (!(concentration > 0.0) || !std::isfinite(concentration)) {
      throw Error(ErrorCode::kInvalidArgument, "concentration must be > 0");
    }
  }
};

// Hash-driven stand-in for a neural LM. The logit of token i under a context
// is a Box-Muller normal built from mix64 of (model_seed, trailing `order`
// context ids, i), divided by the concentration.
class SyntheticLanguageModel final : public LanguageModel {
 public:
  explicit SyntheticLanguageModel(SyntheticLmParams params)
      : params_(params) {
    params_.validate();
  }

  const SyntheticLmParams& params() const noexcept { return params_; }

  std::size_t vocab_size() const override { return params_.vocab_size; }

  std::vector<double> logits(TokenSpan context) const {
    const TokenSpan window = trailing_window(context, params_.order);
    std::uint64_t state = mix64(params_.model_seed);
    for (Token t : window) {
      state = mix64(state ^ (static_cast<std::uint64_t>(t) + 1));
    }
    // Window length is mixed in so short contexts never alias longer ones.
    state = mix64(state ^ (0xa5a5ULL + window.size()));

    std::vector<double> out(params_.vocab_size);
    for (std::size_t i = 0; i < out.size(); ++i) {
      const std::uint64_t a = mix64(state + 2 * i);
      const std::uint64_t b = mix64(state + 2 * i + 1);
      // u1 in (0, 1] so the log is finite.
      const double u1 = (static_cast<double>(a >> 11) + 1.0) * 0x1.0p-53;
      const double u2 = static_cast<double>(b >> 11) * 0x1.0p-53;
      const double normal = std::sqrt(-2.0 * std::log(u1)) *
                            std::cos(2.0 * std::numbers::pi * u2);
      out[i] = normal / params_.concentration;
    }
    return out;
  }

  ProbDistribution next_distribution(TokenSpan context) const override {
    return softmax(logits(context));
  }

  std::string descriptor() const override {
    std::ostringstream os;
    os.precision(17);
    os << "synthetic:vocab_size=" << params_.vocab_size
       << ";order=" << params_.order
       << ";concentration=" << params_.concentration
       << ";model_seed=" << params_.model_seed;
    return os.str();
  }

 private:
  SyntheticLmParams params_;
};

}  // namespace samplemark
