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
#include <string>

#include "samplemark/types.hpp"

namespace samplemark {

// Anything that maps a left context to a next-token distribution.
// Implementations must be deterministic in (model state, context) and safe to
// call concurrently once constructed.
class LanguageModel {
 public:
  virtual ~LanguageModel() = default;

  virtual std::size_t vocab_size() const = 0;
  virtual ProbDistribution next_distribution(TokenSpan context) const = 0;

  // Canonical description stored in generation records.
  virtual std::string descriptor() const = 0;
};

// Always puts all mass on one token. Handy for degenerate-case tests.
class ConstantLanguageModel final : public LanguageModel {
 public:
  ConstantLanguageModel(std::size_t vocab_size, Token token)
      : vocab_size_(vocab_size), token_(token) {}

  std::size_t vocab_size() const override { return vocab_size_; }

  ProbDistribution next_distribution(TokenSpan) const override {
    std::vector<double> probs(vocab_size_, 0.0);
    probs.at(token_) = 1.0;
    return ProbDistribution(std::move(probs));
  }

  std::string descriptor() const override {
    return "constant:vocab_size=" + std::to_string(vocab_size_) +
           ";token=" + std::to_string(token_);
  }

 private:
  std::size_t vocab_size_;
  Token token_;
};

// Uniform over the whole vocabulary regardless of context.
class UniformLanguageModel final : public LanguageModel {
 public:
  explicit UniformLanguageModel(std::size_t vocab_size)
      : vocab_size_(vocab_size) {}

  std::size_t vocab_size() const override { return vocab_size_; }

  ProbDistribution next_distribution(TokenSpan) const override {
    return ProbDistribution::uniform(vocab_size_);
  }

  std::string descriptor() const override {
    return "uniform:vocab_size=" + std::to_string(vocab_size_);
  }

 private:
  std::size_t vocab_size_;
};

}  // namespace samplemark
