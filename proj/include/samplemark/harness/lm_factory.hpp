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
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "samplemark/error.hpp"
#include "samplemark/generator.hpp"
#include "samplemark/language_model.hpp"
#include "samplemark/ngram_lm.hpp"
#include "samplemark/prompts.hpp"
#include "samplemark/rng.hpp"
#include "samplemark/synthetic_lm.hpp"
#include "samplemark/vocabulary.hpp"

namespace samplemark::harness {

enum class LmKind { kSynthetic, kNgram };

struct LmSpec {
  LmKind kind = LmKind::kSynthetic;
  SyntheticLmParams synthetic;
  NgramLmParams ngram;
  std::string corpus_path;
};

// An LM together with what is needed to draw prompts for it.
struct LoadedLm {
  std::unique_ptr<LanguageModel> model;
  Vocabulary vocabulary;             // ngram only
  std::vector<Token> corpus_tokens;  // ngram only
};

inline LoadedLm load_lm(const LmSpec& spec) {
  LoadedLm out;
  if (spec.kind == LmKind::kSynthetic) {
    out.model = std::make_unique<SyntheticLanguageModel>(spec.synthetic);
    return out;
  }
  if (spec.corpus_path.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "ngram LM needs a corpus path");
  }
  out.corpus_tokens =
      out.vocabulary.encode_and_extend(read_text_file(spec.corpus_path));
  out.model = std::make_unique<NgramLanguageModel>(
      out.corpus_tokens, spec.ngram, out.vocabulary.size(), spec.corpus_path);
  return out;
}

// Parses "kind:key=value;key=value" as produced by LanguageModel::descriptor.
inline LmSpec parse_lm_descriptor(std::string_view descriptor) {
  const auto colon = descriptor.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorCode::kDataError,
                "bad LM descriptor '" + std::string(descriptor) + "'");
  }
  const std::string kind(descriptor.substr(0, colon));
  std::map<std::string, std::string> kv;
  std::string_view rest = descriptor.substr(colon + 1);
  while (!rest.empty()) {
    const auto semi = rest.find(';');
    const std::string_view item = rest.substr(0, semi);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kDataError, "bad LM descriptor item");
    }
    kv[std::string(item.substr(0, eq))] = std::string(item.substr(eq + 1));
    rest = semi == std::string_view::npos ? std::string_view{} : rest.substr(semi + 1);
  }
  const auto get = [&](const char* key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) {
      throw Error(ErrorCode::kDataError,
                  std::string("LM descriptor lacks '") + key + "'");
    }
    return it->second;
  };
  LmSpec spec;
  try {
    if (kind == "synthetic") {
      spec.kind = LmKind::kSynthetic;
      spec.synthetic.vocab_size = std::stoull(get("vocab_size"));
      spec.synthetic.order = std::stoi(get("order"));
      spec.synthetic.concentration = std::stod(get("concentration"));
      spec.synthetic.model_seed = std::stoull(get("model_seed"));
    } else if (kind == "ngram") {
      spec.kind = LmKind::kNgram;
      spec.ngram.n = std::stoi(get("n"));
      spec.ngram.alpha = std::stod(get("alpha"));
      spec.corpus_path = get("corpus");
    } else {
      throw Error(ErrorCode::kDataError, "unknown LM kind '" + kind + "'");
    }
  } catch (const std::logic_error& e) {
    throw Error(ErrorCode::kDataError,
                std::string("bad number in LM descriptor: ") + e.what());
  }
  return spec;
}

// Supplies prompt number i for generation attempt i.
//
// Synthetic LM: slices of one unwatermarked stream sampled from the LM itself
// (seeded from the master seed, top-k 40, temperature 1). N-gram LM:
// consecutive slices of the training corpus.
class PromptSource {
 public:
  PromptSource(const LoadedLm& lm, std::size_t prompt_len,
               std::uint64_t master_seed)
      : lm_(lm), prompt_len_(prompt_len), master_seed_(master_seed) {
    if (prompt_len_ == 0) {
      throw Error(ErrorCode::kInvalidArgument, "prompt length must be >= 1");
    }
  }

  // Prompts 0..count-1.
  std::vector<TokenSequence> first(std::size_t count) {
    ensure(count);
    return make_prompts(stream_, prompt_len_, count);
  }

  TokenSequence at(std::size_t i) {
    ensure(i + 1);
    if (stream_.size() / prompt_len_ < i + 1) {
      throw Error(ErrorCode::kInsufficientTokens,
                  "prompt source exhausted at prompt " + std::to_string(i));
    }
    return make_prompts(TokenSpan(stream_).subspan(i * prompt_len_),
                        prompt_len_, 1)
        .front();
  }

 private:
  void ensure(std::size_t count) {
    const std::size_t needed = count * prompt_len_;
    if (stream_.size() >= needed) return;
    if (!lm_.corpus_tokens.empty()) {
      stream_ = lm_.corpus_tokens;  // make_prompts reports any shortfall
      return;
    }
    // Generation is sequential, so a longer run extends the same prefix.
    const std::size_t length = std::max(needed, 2 * stream_.size());
    const TokenSequence start({static_cast<Token>(
        mix64(master_seed_) % lm_.model->vocab_size())});
    stream_ = generate_unwatermarked(*lm_.model, start,
                                     static_cast<int>(length), 40, 1.0,
                                     mix64(master_seed_ ^ 0x70726f6d70747300ULL))
                  .tokens;
  }

  const LoadedLm& lm_;
  std::size_t prompt_len_;
  std::uint64_t master_seed_;
  std::vector<Token> stream_;
};

}  // namespace samplemark::harness
