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

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "golden_values.hpp"
#include "samplemark/detector.hpp"
#include "samplemark/generator.hpp"
#include "samplemark/synthetic_lm.hpp"

namespace samplemark {
namespace {

TEST(SecretNumberAverage, RequiresMoreThanKTokens) {
  const std::vector<Token> one = {4};
  const std::vector<Token> two = {4, 5};
  try {
    secret_number_average(one, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInsufficientTokens);
  }
  EXPECT_THROW(secret_number_average(two, 2), Error);
  EXPECT_THROW(detect(one, 1, 4.0), Error);
  EXPECT_THROW(secret_number_average({}, 0), Error);
}

TEST(SecretNumberAverage, SingleScoredToken) {
  const std::vector<Token> text = {5, 7};
  const auto avg = secret_number_average(text, 1);
  EXPECT_EQ(avg.n_scored, 1u);
  EXPECT_EQ(avg.sna, golden::kSecret5_7);
}

TEST(SecretNumberAverage, SkipsPositionsBelowK) {
  const std::vector<Token> text = {1, 2, 3, 4};
  const auto avg = secret_number_average(text, 2);
  EXPECT_EQ(avg.n_scored, 2u);
  const std::vector<Token> c1 = {1, 2};
  const std::vector<Token> c2 = {2, 3};
  EXPECT_DOUBLE_EQ(avg.sna, (secret_number(c1, 3, 2) + secret_number(c2, 4, 2)) / 2);
}

TEST(ZScore, ReferenceValues) {
  EXPECT_EQ(z_score(0.5, 200), 0.0);
  EXPECT_NEAR(z_score(5.0 / 6.0, 200), 16.33, 0.01);
  EXPECT_NEAR(z_score(0.6, 300), 6.0, 1e-12);
  EXPECT_THROW(z_score(0.5, 0), Error);
}

TEST(ZScore, MonotoneInSnaAndLength) {
  for (double s = 0.0; s < 1.0; s += 0.01) EXPECT_LT(z_score(s, 100), z_score(s + 0.01, 100));
  for (std::size_t n = 1; n < 500; ++n) EXPECT_LT(z_score(0.6, n), z_score(0.6, n + 1));
}

TEST(Verdict, StrictThreshold) {
  EXPECT_EQ(verdict_for(4.0, 4.0), Verdict::kNotWatermarked);
  EXPECT_EQ(verdict_for(std::nextafter(4.0, 5.0), 4.0), Verdict::kWatermarked);
  EXPECT_EQ(verdict_for(-10.0, 4.0), Verdict::kNotWatermarked);
}

TEST(DetectionReport, JsonFieldsAndInvariant) {
  const std::vector<Token> text = {1, 2, 3, 4, 5, 6, 7, 8, 9};
  const auto r = detect(text, 1, 4.0, DetectorMethod::kSwor);
  EXPECT_EQ(r.z, (r.sna - 0.5) / std::sqrt(1.0 / (12.0 * static_cast<double>(r.n_scored))));
  const auto j = r.to_json();
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"method", "sna", "n_scored", "z",
                                            "threshold_u", "verdict"}));
  EXPECT_EQ(j["method"], "swor");
  EXPECT_EQ(j["verdict"], "not_watermarked");
  EXPECT_EQ(r.to_json_line().find('\n'), std::string::npos);
  EXPECT_EQ(detect(text, 1, 4.0), detect(text, 1, 4.0));
}

TEST(Detect, MethodNames) {
  EXPECT_EQ(detector_method_name(DetectorMethod::kSwr), "swr");
  EXPECT_EQ(detector_method_name(DetectorMethod::kMwm), "mwm");
  EXPECT_EQ(detector_method_name(DetectorMethod::kSecretNumberGeneric), "secret-number-generic");
}

TEST(Detect, NullDistributionOfRandomText) {
  constexpr int kTexts = 10000;
  std::mt19937_64 gen(5);
  double sum = 0.0, sq = 0.0;
  int positives = 0;
  std::vector<Token> text(200);
  for (int i = 0; i < kTexts; ++i) {
    for (Token& t : text) t = static_cast<Token>(gen() % 50000);
    const auto r = detect(text, 1, 4.0);
    sum += r.z;
    sq += r.z * r.z;
    positives += r.watermarked() ? 1 : 0;
  }
  const double mean = sum / kTexts;
  const double var = sq / kTexts - mean * mean;
  EXPECT_GE(mean, -0.1);
  EXPECT_LE(mean, 0.1);
  EXPECT_GE(var, 0.85);
  EXPECT_LE(var, 1.15);
  EXPECT_LE(positives, kTexts / 100);
}

TEST(Detect, SworCompletionAveragesFiveSixths) {
  const SyntheticLanguageModel lm(SyntheticLmParams{});
  WatermarkParams p;
  const auto out = generate(lm, TokenSequence({11, 22}), 200, p, 2024);
  const auto r = detect(out, 1, 4.0);
  EXPECT_EQ(r.n_scored, 199u);
  // One standard deviation of the mean of 199 maxima of five uniforms is ~0.01.
  EXPECT_NEAR(r.sna, 5.0 / 6.0, 0.04);
  EXPECT_TRUE(r.watermarked());
  EXPECT_GT(r.z, 12.0);
  EXPECT_LT(r.z, 21.0);
}

}  // namespace
}  // namespace samplemark
