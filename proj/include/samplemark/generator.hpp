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
#include <string>
#include <utility>
#include <vector>

#include "samplemark/distribution.hpp"
#include "samplemark/error.hpp"
#include "samplemark/language_model.hpp"
#include "samplemark/rng.hpp"
#include "samplemark/sampler.hpp"
#include "samplemark/types.hpp"

namespace samplemark {

// Raised when a generation stops early; keeps what was produced so far.
class GenerationError : public Error {
 public:
  GenerationError(ErrorCode code, const std::string& message,
                  std::vector<Token> partial)
      : Error(code, message), partial_(std::move(partial)) {}

  const std::vector<Token>& partial() const noexcept { return partial_; }

 private:
  std::vector<Token> partial_;
};

namespace detail {

// Shared decoding loop. `pick(dist, text, rng)` turns the LM's raw
// distribution for the current text into the next token.
template <typename PickFn>
TokenSequence decode(const LanguageModel& lm, const TokenSequence& prompt,
                     int max_new, std::uint64_t rng_seed, PickFn&& pick) {
  if (max_new < 0) {
    throw Error(ErrorCode::kInvalidArgument, "max_new must be >= 0");
  }
  RandomStream rng(rng_seed);
  std::vector<Token> text = prompt.tokens;
  text.reserve(prompt.size() + static_cast<std::size_t>(max_new));
  const std::size_t vocab = lm.vocab_size();
  for (int step = 0; step < max_new; ++step) {
    try {
      const ProbDistribution raw = lm.next_distribution(text);
      if (raw.size() != vocab) {
        throw Error(ErrorCode::kInvalidDistribution,
                    "LM returned a distribution of the wrong length");
      }
      text.push_back(pick(raw, TokenSpan(text), rng));
    } catch (const Error& e) {
      throw GenerationError(
          e.code(), "generation stopped at step " + std::to_string(step) +
                        ": " + e.what(),
          std::vector<Token>(text.begin() + static_cast<std::ptrdiff_t>(
                                                prompt.size()),
                             text.end()));
    }
  }
  return TokenSequence(
      std::vector<Token>(text.begin() + static_cast<std::ptrdiff_t>(prompt.size()),
                         text.end()),
      SequenceRole::kCompletion);
}

}  // namespace detail

// Watermarked generation: at every step, transform the LM distribution, draw
// y candidates and keep the one with the largest secret number. Returns the
// completion only.
inline TokenSequence generate(const LanguageModel& lm,
                              const TokenSequence& prompt, int max_new,
                              const WatermarkParams& params,
                              std::uint64_t rng_seed) {
  params.validate();
  return detail::decode(
      lm, prompt, max_new, rng_seed,
      [&](const ProbDistribution& raw, TokenSpan text, RandomStream& rng) {
        const ProbDistribution dist =
            transform_distribution(raw, params.top_k, params.temperature);
        return select_next_token(dist, text, params, rng);
      });
}

// Plain top-k / temperature sampling, one draw per step.
inline TokenSequence generate_unwatermarked(const LanguageModel& lm,
                                            const TokenSequence& prompt,
                                            int max_new, int top_k,
                                            double temperature,
                                            std::uint64_t rng_seed) {
  return detail::decode(
      lm, prompt, max_new, rng_seed,
      [&](const ProbDistribution& raw, TokenSpan, RandomStream& rng) {
        return sample_token(transform_distribution(raw, top_k, temperature),
                            rng);
      });
}

}  // namespace samplemark
