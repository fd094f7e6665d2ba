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
#include <vector>

#include "samplemark/error.hpp"
#include "samplemark/types.hpp"

namespace samplemark {

// Consecutive, non-overlapping slices of `source`, each prompt_len long.
inline std::vector<TokenSequence> make_prompts(TokenSpan source,
                                               std::size_t prompt_len,
                                               std::size_t count) {
  if (count == 0) return {};
  if (prompt_len == 0) {
    throw Error(ErrorCode::kInvalidArgument, "prompt_len must be >= 1");
  }
  if (source.size() / prompt_len < count) {
    throw Error(ErrorCode::kInsufficientTokens,
                "source has " + std::to_string(source.size()) +
                    " tokens, need " + std::to_string(prompt_len * count));
  }
  std::vector<TokenSequence> prompts;
  prompts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const TokenSpan slice = source.subspan(i * prompt_len, prompt_len);
    prompts.emplace_back(std::vector<Token>(slice.begin(), slice.end()),
                         SequenceRole::kPrompt);
  }
  return prompts;
}

}  // namespace samplemark
