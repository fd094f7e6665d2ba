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

#include <stdexcept>
#include <string>

namespace samplemark {

enum class ErrorCode {
  kInvalidArgument,
  kDegenerateDistribution,
  kInsufficientTokens,
  kInvalidDistribution,
  kDataError,
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid argument";
    case ErrorCode::kDegenerateDistribution:
      return "degenerate distribution";
    case ErrorCode::kInsufficientTokens:
      return "insufficient tokens";
    case ErrorCode::kInvalidDistribution:
      return "invalid distribution";
    case ErrorCode::kDataError:
      return "data error";
  }
  return "unknown";
}

// Every failure raised by the library carries one of the codes above so the
// harness can map it to an exit status or a row-level error entry.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " +
                           message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace samplemark
