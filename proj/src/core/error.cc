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

#include "pathobench/core/error.h"

namespace pathobench {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kEmptyText: return "EmptyText";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kOracleUnavailable: return "OracleUnavailable";
    case ErrorCode::kProtocolError: return "ProtocolError";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNoPhrases: return "NoPhrases";
    case ErrorCode::kSpanOutOfBounds: return "SpanOutOfBounds";
    case ErrorCode::kGenerationRefused: return "GenerationRefused";
    case ErrorCode::kGenerationFailed: return "GenerationFailed";
    case ErrorCode::kInsufficientPhrases: return "InsufficientPhrases";
    case ErrorCode::kNoSubstituteFound: return "NoSubstituteFound";
    case ErrorCode::kNoLexiconMatch: return "NoLexiconMatch";
    case ErrorCode::kDecodeError: return "DecodeError";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kNonFiniteGradient: return "NonFiniteGradient";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kMissingComponent: return "MissingComponent";
    case ErrorCode::kDivergenceDetected: return "DivergenceDetected";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kScorerFailure: return "ScorerFailure";
    case ErrorCode::kMissingPrompt: return "MissingPrompt";
    case ErrorCode::kEmptyManifest: return "EmptyManifest";
  }
  return "Unknown";
}

bool IsOracleError(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOracleUnavailable:
    case ErrorCode::kProtocolError:
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kGenerationRefused:
    case ErrorCode::kGenerationFailed:
      return true;
    default:
      return false;
  }
}

}  // namespace pathobench
