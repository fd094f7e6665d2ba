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

// Experiment orchestration shared by the CLI subcommands and the acceptance
// suite: batched generation with retries, detection, attacks and summaries.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "samplemark/attack.hpp"
#include "samplemark/detector.hpp"
#include "samplemark/diversity.hpp"
#include "samplemark/error.hpp"
#include "samplemark/generator.hpp"
#include "samplemark/harness/lm_factory.hpp"
#include "samplemark/harness/records.hpp"
#include "samplemark/maryland.hpp"
#include "samplemark/parallel.hpp"
#include "samplemark/similarity.hpp"

namespace samplemark::harness {

struct GenerationConfig {
  Method method = Method::kSwor;
  int y = 5;
  int k = 1;
  int top_k = 40;
  double temperature = 1.0;
  double threshold_u = 4.0;
  double gamma = 0.25;
  double delta = 2.0;
  std::size_t n = 1;
  int max_new = 200;
  std::size_t prompt_len = 100;
  std::uint64_t master_seed = 42;

  WatermarkParams watermark_params() const {
    WatermarkParams p;
    p.y = y;
    p.k = k;
    p.mode = method == Method::kSwr ? SamplingMode::kWithReplacement
                                    : SamplingMode::kWithoutReplacement;
    p.top_k = top_k;
    p.temperature = temperature;
    p.threshold_u = threshold_u;
    return p;
  }

  MwmParams mwm_params() const {
    MwmParams p;
    p.gamma = gamma;
    p.delta = delta;
    p.k = k;
    p.top_k = top_k;
    p.temperature = temperature;
    p.threshold_u = threshold_u;
    return p;
  }

  void validate() const {
    if (max_new < 1) throw Error(ErrorCode::kInvalidArgument, "max_new must be >= 1");
    if (method == Method::kMwm) {
      mwm_params().validate();
    } else {
      watermark_params().validate();
    }
  }
};

inline GenerationRecord generate_record(const LanguageModel& lm,
                                        const GenerationConfig& config,
                                        const TokenSequence& prompt,
                                        std::uint64_t seed) {
  GenerationRecord r;
  r.method = config.method;
  r.lm_descriptor = lm.descriptor();
  r.vocab_size = lm.vocab_size();
  r.prompt = prompt;
  r.prompt.role = SequenceRole::kPrompt;
  r.top_k = config.top_k;
  r.temperature = config.temperature;
  r.rng_seed = seed;
  switch (config.method) {
    case Method::kSwr:
    case Method::kSwor:
      r.watermark = config.watermark_params();
      r.completion = generate(lm, prompt, config.max_new, *r.watermark, seed);
      break;
    case Method::kMwm:
      r.mwm = config.mwm_params();
      r.completion = mwm_generate(lm, prompt, config.max_new, *r.mwm, seed);
      break;
    case Method::kNone:
      r.completion = generate_unwatermarked(lm, prompt, config.max_new,
                                            config.top_k, config.temperature, seed);
      break;
  }
  r.id = record_id(r.method, seed, prompt);
  return r;
}

struct GenerationBatch {
  std::vector<GenerationRecord> records;
  std::vector<std::string> failures;  // one message per discarded attempt
};

// Generates config.n records. Attempt i uses prompt i and seed master + i;
// incomplete generations are discarded and retried with the next attempt.
inline GenerationBatch run_generation(const LoadedLm& lm,
                                      const GenerationConfig& config) {
  config.validate();
  GenerationBatch batch;
  if (config.n == 0) return batch;
  PromptSource prompts(lm, config.prompt_len, config.master_seed);
  const std::vector<TokenSequence> initial = prompts.first(config.n);

  struct Attempt {
    std::optional<GenerationRecord> record;
    std::string failure;
  };
  const auto attempt = [&](const TokenSequence& prompt, std::size_t index) {
    Attempt a;
    try {
      a.record = generate_record(*lm.model, config, prompt,
                                 config.master_seed + index);
    } catch (const GenerationError& e) {
      a.failure = "attempt " + std::to_string(index) + ": " + e.what();
    }
    return a;
  };

  auto first_round = parallel_map(
      config.n, [&](std::size_t i) { return attempt(initial[i], i); });
  for (auto& a : first_round) {
    if (a.record) {
      batch.records.push_back(std::move(*a.record));
    } else {
      batch.failures.push_back(std::move(a.failure));
    }
  }
  const std::size_t max_attempts = 10 * config.n + 100;
  for (std::size_t index = config.n; batch.records.size() < config.n; ++index) {
    if (index >= max_attempts) {
      throw Error(ErrorCode::kDataError,
                  "too many failed generations (" +
                      std::to_string(batch.failures.size()) + ")");
    }
    Attempt a = attempt(prompts.at(index), index);
    if (a.record) {
      batch.records.push_back(std::move(*a.record));
    } else {
      batch.failures.push_back(std::move(a.failure));
    }
  }
  return batch;
}

enum class DetectorKind {
  kAuto,  // mwm records -> greenlist detector, everything else -> secret numbers
  kSecretNumber,
  kMwm,
};

struct DetectorSpec {
  DetectorKind kind = DetectorKind::kAuto;
  int k = 1;
  double threshold_u = 4.0;
  double gamma = 0.25;
  // Label used for secret-number reports when kind == kSecretNumber.
  DetectorMethod label = DetectorMethod::kSecretNumberGeneric;
};

inline DetectorMethod secret_label_for(Method m) {
  switch (m) {
    case Method::kSwr:
      return DetectorMethod::kSwr;
    case Method::kSwor:
      return DetectorMethod::kSwor;
    default:
      return DetectorMethod::kSecretNumberGeneric;
  }
}

// Scores the completion only.
inline DetectionReport detect_record(const GenerationRecord& record,
                                     const DetectorSpec& spec) {
  const bool use_mwm = spec.kind == DetectorKind::kMwm ||
                       (spec.kind == DetectorKind::kAuto && record.method == Method::kMwm);
  if (use_mwm) {
    MwmParams p = record.mwm.value_or(MwmParams{});
    if (!record.mwm || spec.kind == DetectorKind::kMwm) {
      p.gamma = spec.gamma;
      p.k = spec.k;
    }
    p.threshold_u = spec.threshold_u;
    return mwm_detect(record.completion, p, record.vocab_size);
  }
  const DetectorMethod label = spec.kind == DetectorKind::kAuto
                                   ? secret_label_for(record.method)
                                   : spec.label;
  return detect(record.completion, spec.k, spec.threshold_u, label);
}

struct ExperimentSummary {
  std::size_t n_samples = 0;
  std::size_t n_detected = 0;
  std::size_t n_errors = 0;
  double mean_z = 0.0;
  double detection_rate = 0.0;
  double mean_diversity = 0.0;
  std::optional<double> mean_similarity;
};

class SummaryBuilder {
 public:
  void add(const DetectionReport& report, double diversity_value,
           std::optional<double> similarity) {
    ++n_;
    z_sum_ += report.z;
    detected_ += report.watermarked() ? 1 : 0;
    diversity_sum_ += diversity_value;
    if (similarity) {
      similarity_sum_ += *similarity;
      ++n_similarity_;
    }
  }
  void add_error() { ++errors_; }

  ExperimentSummary build() const {
    ExperimentSummary s;
    s.n_samples = n_;
    s.n_detected = detected_;
    s.n_errors = errors_;
    if (n_ > 0) {
      const double n = static_cast<double>(n_);
      s.mean_z = z_sum_ / n;
      s.detection_rate = static_cast<double>(detected_) / n;
      s.mean_diversity = diversity_sum_ / n;
    }
    if (n_similarity_ > 0) {
      s.mean_similarity = similarity_sum_ / static_cast<double>(n_similarity_);
    }
    return s;
  }

 private:
  std::size_t n_ = 0;
  std::size_t detected_ = 0;
  std::size_t errors_ = 0;
  std::size_t n_similarity_ = 0;
  double z_sum_ = 0.0;
  double diversity_sum_ = 0.0;
  double similarity_sum_ = 0.0;
};

// Diversity of a completion, or 0 when it is too short to score.
inline double safe_diversity(TokenSpan text, const DiversityConfig& config = {}) {
  return text.size() >= static_cast<std::size_t>(config.max_order)
             ? diversity(text, config)
             : 0.0;
}

inline GenerationRecord attack_record(const GenerationRecord& record,
                                      const AttackParams& params,
                                      const LanguageModel* lm) {
  GenerationRecord out = record;
  out.completion = substitution_attack(record.completion, params,
                                       record.vocab_size, lm);
  out.completion.role = SequenceRole::kCompletion;
  out.attack = AttackInfo{params, record.id};
  return out;
}

// Per-record attack seed: base + record index.
inline std::vector<GenerationRecord> attack_records(
    const std::vector<GenerationRecord>& records, double rate,
    AttackPolicy policy, std::uint64_t base_seed, const LanguageModel* lm) {
  return parallel_map(records.size(), [&](std::size_t i) {
    return attack_record(records[i], AttackParams{rate, policy, base_seed + i}, lm);
  });
}

}  // namespace samplemark::harness
