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
#include <string>
#include <string_view>

#include "json.hpp"
#include "samplemark/error.hpp"
#include "samplemark/secret_number.hpp"
#include "samplemark/types.hpp"

namespace samplemark {

enum class DetectorMethod { kSwr, kSwor, kMwm, kSecretNumberGeneric };

inline std::string_view detector_method_name(DetectorMethod m) {
  switch (m) {
    case DetectorMethod::kSwr:
      return "swr";
    case DetectorMethod::kSwor:
      return "swor";
    case DetectorMethod::kMwm:
      return "mwm";
    case DetectorMethod::kSecretNumberGeneric:
      return "secret-number-generic";
  }
  return "unknown";
}

enum class Verdict { kWatermarked, kNotWatermarked };

inline std::string_view verdict_name(Verdict v) {
  return v == Verdict::kWatermarked ? "watermarked" : "not_watermarked";
}

struct DetectionReport {
  DetectorMethod method = DetectorMethod::kSecretNumberGeneric;
  // Secret number average; for the greenlist detector, the green fraction.
  double sna = 0.0;
  std::size_t n_scored = 0;
  double z = 0.0;
  double threshold_u = 4.0;
  Verdict verdict = Verdict::kNotWatermarked;

  bool watermarked() const noexcept { return verdict == Verdict::kWatermarked; }

  friend bool operator==(const DetectionReport&, const DetectionReport&) = default;

  // Fixed field order: method, sna, n_scored, z, threshold_u, verdict.
  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["method"] = detector_method_name(method);
    j["sna"] = sna;
    j["n_scored"] = n_scored;
    j["z"] = z;
    j["threshold_u"] = threshold_u;
    j["verdict"] = verdict_name(verdict);
    return j;
  }

  std::string to_json_line() const { return to_json().dump(); }
};

struct SecretNumberAverage {
  double sna = 0.0;
  std::size_t n_scored = 0;
};

// Mean secret number over positions k..|text|-1; each position is scored
// against its k predecessors. Positions below k are skipped.
inline SecretNumberAverage secret_number_average(TokenSpan text, int k) {
  if (k < 0) throw Error(ErrorCode::kInvalidArgument, "k must be >= 0");
  const auto first = static_cast<std::size_t>(k);
  if (text.size() <= first) {
    throw Error(ErrorCode::kInsufficientTokens,
                "need more than " + std::to_string(k) + " tokens, got " +
                    std::to_string(text.size()));
  }
  double sum = 0.0;
  for (std::size_t r = first; r < text.size(); ++r) {
    sum += secret_number(text.first(r), text[r], k);
  }
  const std::size_t n = text.size() - first;
  return {sum / static_cast<double>(n), n};
}

// (sna - 1/2) / sqrt(1 / (12 n)): the uniform-mean z statistic.
inline double z_score(double sna, std::size_t n_scored) {
  if (n_scored == 0) {
    throw Error(ErrorCode::kInsufficientTokens, "z-score needs n_scored >= 1");
  }
  return (sna - 0.5) / std::sqrt(1.0 / (12.0 * static_cast<double>(n_scored)));
}

inline Verdict verdict_for(double z, double threshold_u) {
  return z > threshold_u ? Verdict::kWatermarked : Verdict::kNotWatermarked;
}

inline DetectionReport detect(
    TokenSpan text, int k, double threshold_u,
    DetectorMethod method = DetectorMethod::kSecretNumberGeneric) {
  const SecretNumberAverage avg = secret_number_average(text, k);
  DetectionReport report;
  report.method = method;
  report.sna = avg.sna;
  report.n_scored = avg.n_scored;
  report.z = z_score(avg.sna, avg.n_scored);
  report.threshold_u = threshold_u;
  report.verdict = verdict_for(report.z, threshold_u);
  return report;
}

}  // namespace samplemark
