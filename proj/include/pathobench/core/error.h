/* Copyright 2026 The Pathobench Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef PATHOBENCH_CORE_ERROR_H_
#define PATHOBENCH_CORE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace pathobench {

enum class ErrorCode {
  kInvalidArgument,
  kEmptyText,
  kIoError,
  kSchemaError,
  kOracleUnavailable,
  kProtocolError,
  kDimensionMismatch,
  kNoPhrases,
  kSpanOutOfBounds,
  kGenerationRefused,
  kGenerationFailed,
  kInsufficientPhrases,
  kNoSubstituteFound,
  kNoLexiconMatch,
  kDecodeError,
  kLengthMismatch,
  kNonFiniteGradient,
  kZeroVector,
  kMissingComponent,
  kDivergenceDetected,
  kEmptyCorpus,
  kScorerFailure,
  kMissingPrompt,
  kEmptyManifest,
};

std::string_view ErrorCodeName(ErrorCode code);

// True for failures that originate in the model oracle or its transport.
bool IsOracleError(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  ErrorCode code() const { return code_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace pathobench

#endif  // PATHOBENCH_CORE_ERROR_H_
