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
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "samplemark/error.hpp"
#include "samplemark/rng.hpp"
#include "samplemark/types.hpp"

namespace samplemark {

// Softmax of raw logits. -inf entries get probability zero.
inline ProbDistribution softmax(std::span<const double> logits) {
  if (logits.empty()) {
    throw Error(ErrorCode::kInvalidDistribution, "empty logit vector");
  }
  const double max_logit = *std::max_element(logits.begin(), logits.end());
  if (!std::isfinite(max_logit)) {
    throw Error(ErrorCode::kDegenerateDistribution,
                "no finite logit to normalize");
  }
  std::vector<double> weights(logits.size());
  for (std::size_t i = 0; i < logits.size(); ++i) {
    weights[i] = std::exp(logits[i] - max_logit);
  }
  return ProbDistribution::from_weights(std::move(weights));
}

// Temperature, then top-k truncation, then renormalization.
//
// Temperature is applied to log-probabilities, so p_i becomes proportional to
// p_i^(1/temperature). Truncation keeps the `top_k` largest entries; ties at
// the boundary favour the smaller token id. When neither step changes
// anything the input is returned unchanged.
inline ProbDistribution transform_distribution(const ProbDistribution& raw,
                                               int top_k, double temperature) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw Error(ErrorCode::kInvalidArgument, "temperature must be > 0");
  }
  if (top_k < 1) throw Error(ErrorCode::kInvalidArgument, "top_k must be >= 1");

  const std::span<const double> probs = raw.probs();
  const bool rescale = temperature != 1.0;
  const bool truncate = static_cast<std::size_t>(top_k) < raw.support_size();
  if (!rescale && !truncate) return raw;

  std::vector<double> weights(probs.begin(), probs.end());
  if (rescale) {
    double max_log = -std::numeric_limits<double>::infinity();
    for (double& w : weights) {
      w = w > 0.0 ? std::log(w) / temperature
                  : -std::numeric_limits<double>::infinity();
      max_log = std::max(max_log, w);
    }
    for (double& w : weights) w = std::exp(w - max_log);
  }
  if (truncate) {
    std::vector<std::size_t> order(weights.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto ranks_before = [&](std::size_t a, std::size_t b) {
      return weights[a] != weights[b] ? weights[a] > weights[b] : a < b;
    };
    std::nth_element(order.begin(), order.begin() + (top_k - 1), order.end(),
                     ranks_before);
    for (auto it = order.begin() + top_k; it != order.end(); ++it) {
      weights[*it] = 0.0;
    }
  }
  return ProbDistribution::from_weights(std::move(weights));
}

// Index picked by inverse-CDF lookup of u in [0, 1) over `weights` scanned in
// order. Zero-weight entries are never returned.
inline std::size_t draw_index(std::span<const double> weights, double u) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) {
    throw Error(ErrorCode::kDegenerateDistribution, "empty support");
  }
  const double target = u * total;
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    cumulative += weights[i];
    last_positive = i;
    if (cumulative > target) return i;
  }
  return last_positive;
}

// One multinomial draw; consumes exactly one uniform from the stream.
inline Token sample_token(const ProbDistribution& dist, RandomStream& rng) {
  return static_cast<Token>(draw_index(dist.probs(), rng.uniform()));
}

inline double entropy_nats(const ProbDistribution& dist) {
  double h = 0.0;
  for (double p : dist.probs()) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

}  // namespace samplemark
