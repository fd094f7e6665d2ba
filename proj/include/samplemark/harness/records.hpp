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

// GenerationRecord: one persisted generation, serialized as a JSONL line with
// a fixed field order.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "samplemark/attack.hpp"
#include "samplemark/error.hpp"
#include "samplemark/hash.hpp"
#include "samplemark/maryland.hpp"
#include "samplemark/rng.hpp"
#include "samplemark/types.hpp"

namespace samplemark::harness {

using Json = nlohmann::ordered_json;

enum class Method { kSwr, kSwor, kMwm, kNone };

inline std::string_view method_name(Method m) {
  switch (m) {
    case Method::kSwr:
      return "swr";
    case Method::kSwor:
      return "swor";
    case Method::kMwm:
      return "mwm";
    case Method::kNone:
      return "none";
  }
  return "unknown";
}

inline std::optional<Method> parse_method(std::string_view s) {
  if (s == "swr") return Method::kSwr;
  if (s == "swor") return Method::kSwor;
  if (s == "mwm") return Method::kMwm;
  if (s == "none") return Method::kNone;
  return std::nullopt;
}

struct AttackInfo {
  AttackParams params;
  std::string source_id;  // id of the record that was attacked

  friend bool operator==(const AttackInfo&, const AttackInfo&) = default;
};

struct GenerationRecord {
  std::string id;
  Method method = Method::kNone;
  std::string lm_descriptor;
  std::size_t vocab_size = 0;
  TokenSequence prompt;
  TokenSequence completion;
  int top_k = 40;
  double temperature = 1.0;
  std::optional<WatermarkParams> watermark;  // swr / swor
  std::optional<MwmParams> mwm;              // mwm
  std::uint64_t rng_seed = 0;
  std::string rng_algorithm{RandomStream::kAlgorithm};
  std::optional<AttackInfo> attack;

  friend bool operator==(const GenerationRecord&,
                         const GenerationRecord&) = default;
};

// Hex SHA-256 of method name, a zero byte, the seed (8 bytes big-endian) and
// the prompt ids (4 bytes big-endian each).
inline std::string record_id(Method method, std::uint64_t seed,
                             TokenSpan prompt) {
  std::vector<std::uint8_t> bytes;
  const std::string_view name = method_name(method);
  bytes.insert(bytes.end(), name.begin(), name.end());
  bytes.push_back(0);
  append_u64_be(bytes, seed);
  append_tokens_be(bytes, prompt);
  return to_hex(sha256(bytes));
}

inline Json watermark_params_json(const WatermarkParams& p) {
  Json j;
  j["y"] = p.y;
  j["k"] = p.k;
  j["mode"] = sampling_mode_name(p.mode);
  j["top_k"] = p.top_k;
  j["temperature"] = p.temperature;
  j["threshold_u"] = p.threshold_u;
  return j;
}

inline Json mwm_params_json(const MwmParams& p) {
  Json j;
  j["gamma"] = p.gamma;
  j["delta"] = p.delta;
  j["k"] = p.k;
  j["top_k"] = p.top_k;
  j["temperature"] = p.temperature;
  j["threshold_u"] = p.threshold_u;
  return j;
}

inline Json to_json(const GenerationRecord& r) {
  Json j;
  j["id"] = r.id;
  j["method"] = method_name(r.method);
  j["lm_descriptor"] = r.lm_descriptor;
  j["vocab_size"] = r.vocab_size;
  j["prompt"] = r.prompt.tokens;
  j["completion"] = r.completion.tokens;
  j["decoding"] = Json{{"top_k", r.top_k}, {"temperature", r.temperature}};
  if (r.watermark) j["params"] = watermark_params_json(*r.watermark);
  if (r.mwm) j["params"] = mwm_params_json(*r.mwm);
  j["rng_seed"] = r.rng_seed;
  j["rng_algorithm"] = r.rng_algorithm;
  if (r.attack) {
    j["attack"] = Json{{"rate_t", r.attack->params.rate_t},
                       {"policy", attack_policy_name(r.attack->params.policy)},
                       {"attack_seed", r.attack->params.attack_seed},
                       {"source_id", r.attack->source_id}};
  }
  return j;
}

inline std::string to_jsonl(const GenerationRecord& r) { return to_json(r).dump(); }

namespace detail {

template <typename T>
T field(const Json& j, const char* name) {
  if (!j.contains(name)) {
    throw Error(ErrorCode::kDataError, std::string("missing field '") + name + "'");
  }
  try {
    return j.at(name).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kDataError,
                std::string("bad field '") + name + "': " + e.what());
  }
}

}  // namespace detail

inline GenerationRecord record_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kDataError, "record is not an object");
  using detail::field;
  GenerationRecord r;
  r.id = field<std::string>(j, "id");
  const auto method = parse_method(field<std::string>(j, "method"));
  if (!method) throw Error(ErrorCode::kDataError, "unknown method");
  r.method = *method;
  r.lm_descriptor = field<std::string>(j, "lm_descriptor");
  r.vocab_size = field<std::size_t>(j, "vocab_size");
  r.prompt = TokenSequence(field<std::vector<Token>>(j, "prompt"), SequenceRole::kPrompt);
  r.completion = TokenSequence(field<std::vector<Token>>(j, "completion"),
                               SequenceRole::kCompletion);
  const Json decoding = field<Json>(j, "decoding");
  r.top_k = field<int>(decoding, "top_k");
  r.temperature = field<double>(decoding, "temperature");
  if (r.method == Method::kSwr || r.method == Method::kSwor) {
    const Json p = field<Json>(j, "params");
    WatermarkParams w;
    w.y = field<int>(p, "y");
    w.k = field<int>(p, "k");
    const auto mode = field<std::string>(p, "mode");
    if (mode != "with_replacement" && mode != "without_replacement") {
      throw Error(ErrorCode::kDataError, "unknown sampling mode '" + mode + "'");
    }
    w.mode = mode == "with_replacement" ? SamplingMode::kWithReplacement
                                        : SamplingMode::kWithoutReplacement;
    w.top_k = field<int>(p, "top_k");
    w.temperature = field<double>(p, "temperature");
    w.threshold_u = field<double>(p, "threshold_u");
    r.watermark = w;
  } else if (r.method == Method::kMwm) {
    const Json p = field<Json>(j, "params");
    MwmParams m;
    m.gamma = field<double>(p, "gamma");
    m.delta = field<double>(p, "delta");
    m.k = field<int>(p, "k");
    m.top_k = field<int>(p, "top_k");
    m.temperature = field<double>(p, "temperature");
    m.threshold_u = field<double>(p, "threshold_u");
    r.mwm = m;
  }
  r.rng_seed = field<std::uint64_t>(j, "rng_seed");
  r.rng_algorithm = field<std::string>(j, "rng_algorithm");
  if (j.contains("attack")) {
    const Json a = field<Json>(j, "attack");
    AttackInfo info;
    info.params.rate_t = field<double>(a, "rate_t");
    const auto policy = parse_attack_policy(field<std::string>(a, "policy"));
    if (!policy) throw Error(ErrorCode::kDataError, "unknown attack policy");
    info.params.policy = *policy;
    info.params.attack_seed = field<std::uint64_t>(a, "attack_seed");
    info.source_id = field<std::string>(a, "source_id");
    r.attack = info;
  }
  return r;
}

inline GenerationRecord record_from_jsonl(std::string_view line) {
  Json j;
  try {
    j = Json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kDataError, std::string("malformed JSON: ") + e.what());
  }
  return record_from_json(j);
}

}  // namespace samplemark::harness
