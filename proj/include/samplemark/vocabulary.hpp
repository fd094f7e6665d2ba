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
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "samplemark/error.hpp"
#include "samplemark/types.hpp"

namespace samplemark {

// Whitespace tokenizer with a string <-> id table. Ids are assigned in order
// of first appearance.
class Vocabulary {
 public:
  Vocabulary() = default;

  std::size_t size() const noexcept { return strings_.size(); }

  Token intern(const std::string& word) {
    auto [it, inserted] = ids_.try_emplace(word, static_cast<Token>(strings_.size()));
    if (inserted) strings_.push_back(word);
    return it->second;
  }

  bool contains(const std::string& word) const { return ids_.count(word) != 0; }

  Token id(const std::string& word) const {
    const auto it = ids_.find(word);
    if (it == ids_.end()) {
      throw Error(ErrorCode::kDataError, "unknown word '" + word + "'");
    }
    return it->second;
  }

  const std::string& word(Token id) const {
    if (id >= strings_.size()) {
      throw Error(ErrorCode::kDataError,
                  "token " + std::to_string(id) + " outside vocabulary");
    }
    return strings_[id];
  }

  // Splits on whitespace, interning new words.
  std::vector<Token> encode_and_extend(std::string_view text) {
    std::vector<Token> out;
    std::istringstream in{std::string(text)};
    std::string w;
    while (in >> w) out.push_back(intern(w));
    return out;
  }

  // Splits on whitespace; every word must already be known.
  std::vector<Token> encode(std::string_view text) const {
    std::vector<Token> out;
    std::istringstream in{std::string(text)};
    std::string w;
    while (in >> w) out.push_back(id(w));
    return out;
  }

  std::string decode(TokenSpan tokens) const {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (i) out.push_back(' ');
      out += word(tokens[i]);
    }
    return out;
  }

  // {"word": id, ...} in id order.
  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < strings_.size(); ++i) j[strings_[i]] = i;
    return j;
  }

  static Vocabulary from_json(const nlohmann::ordered_json& j) {
    if (!j.is_object()) {
      throw Error(ErrorCode::kDataError, "vocabulary must be a JSON object");
    }
    Vocabulary v;
    v.strings_.resize(j.size());
    std::vector<bool> seen(j.size(), false);
    for (const auto& [word, id_json] : j.items()) {
      const auto id = id_json.get<std::size_t>();
      if (id >= j.size() || seen[id]) {
        throw Error(ErrorCode::kDataError, "vocabulary ids must be 0..n-1");
      }
      seen[id] = true;
      v.strings_[id] = word;
      v.ids_.emplace(word, static_cast<Token>(id));
    }
    return v;
  }

 private:
  std::vector<std::string> strings_;
  std::unordered_map<std::string, Token> ids_;
};

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kDataError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace samplemark
