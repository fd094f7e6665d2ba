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
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "samplemark/error.hpp"
#include "samplemark/language_model.hpp"
#include "samplemark/types.hpp"

namespace samplemark {

struct NgramLmParams {
  int n = 3;
  double alpha = 0.01;  // additive smoothing
};

// Additively smoothed n-gram model:
//   P(t | ctx) = (count(ctx, t) + alpha) / (count(ctx) + alpha * V)
// where ctx is the trailing n-1 tokens. Immutable after construction.
class NgramLanguageModel final : public LanguageModel {
 public:
  NgramLanguageModel(TokenSpan corpus, NgramLmParams params,
                     std::size_t vocab_size, std::string corpus_label = "")
      : params_(params),
        vocab_size_(vocab_size),
        corpus_label_(std::move(corpus_label)) {
    if (params_.n < 1) throw Error(ErrorCode::kInvalidArgument, "n must be >= 1");
    if (!(params_.alpha > 0.0) || !std::isfinite(params_.alpha)) {
      throw Error(ErrorCode::kInvalidArgument, "alpha must be > 0");
    }
    if (vocab_size_ < 1) {
      throw Error(ErrorCode::kInvalidArgument, "vocab_size must be >= 1");
    }
    const auto n = static_cast<std::size_t>(params_.n);
    if (corpus.size() < n) {
      throw Error(ErrorCode::kInsufficientTokens,
                  "corpus shorter than n (" + std::to_string(corpus.size()) +
                      " < " + std::to_string(n) + ")");
    }
    for (Token t : corpus) {
      if (t >= vocab_size_) {
        throw Error(ErrorCode::kDataError, "corpus token outside vocabulary");
      }
    }
    for (std::size_t end = n - 1; end < corpus.size(); ++end) {
      std::vector<Token> ctx(corpus.begin() + static_cast<std::ptrdiff_t>(end - (n - 1)),
                             corpus.begin() + static_cast<std::ptrdiff_t>(end));
      Successors& s = table_[std::move(ctx)];
      ++s.counts[corpus[end]];
      ++s.total;
    }
    corpus_tokens_ = corpus.size();
  }

  std::size_t vocab_size() const override { return vocab_size_; }
  const NgramLmParams& params() const noexcept { return params_; }
  std::size_t corpus_tokens() const noexcept { return corpus_tokens_; }
  std::size_t context_count() const noexcept { return table_.size(); }

  ProbDistribution next_distribution(TokenSpan context) const override {
    const std::size_t width = static_cast<std::size_t>(params_.n) - 1;
    const double v = static_cast<double>(vocab_size_);
    if (context.size() < width) return ProbDistribution::uniform(vocab_size_);
    const std::vector<Token> key(context.end() - static_cast<std::ptrdiff_t>(width),
                                 context.end());
    const auto it = table_.find(key);
    if (it == table_.end()) return ProbDistribution::uniform(vocab_size_);

    const Successors& s = it->second;
    const double denom = static_cast<double>(s.total) + params_.alpha * v;
    std::vector<double> probs(vocab_size_, params_.alpha / denom);
    for (const auto& [t, c] : s.counts) {
      probs[t] = (static_cast<double>(c) + params_.alpha) / denom;
    }
    return ProbDistribution(std::move(probs));
  }

  std::string descriptor() const override {
    std::ostringstream os;
    os.precision(17);
    os << "ngram:n=" << params_.n << ";alpha=" << params_.alpha
       << ";vocab_size=" << vocab_size_;
    if (!corpus_label_.empty()) os << ";corpus=" << corpus_label_;
    return os.str();
  }

 private:
  struct Successors {
    std::map<Token, std::uint64_t> counts;
    std::uint64_t total = 0;
  };

  NgramLmParams params_;
  std::size_t vocab_size_;
  std::string corpus_label_;
  std::size_t corpus_tokens_ = 0;
  std::map<std::vector<Token>, Successors> table_;
};

}  // namespace samplemark
