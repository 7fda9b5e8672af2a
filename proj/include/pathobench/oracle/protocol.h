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

#ifndef PATHOBENCH_ORACLE_PROTOCOL_H_
#define PATHOBENCH_ORACLE_PROTOCOL_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

namespace pathobench::oracle {

// Oracle wire protocol v1. One JSON object per request and per response;
// over stdio each is a single line terminated by '\n', over HTTP each is the
// body of POST /v1/oracle.
//
//   request:  {"id": u64, "method": str, "params": {...}}
//   response: {"id": u64, "result": {...}}
//          or {"id": u64, "error": {"code": int, "message": str}}
inline constexpr std::string_view kHttpPath = "/v1/oracle";
inline constexpr size_t kMaxBatch = 64;

enum class Method {
  kEmbedText,
  kEmbedImage,
  kMaskFill,
  kGenerateText,
  kGenerateImage,
};

std::string_view MethodName(Method method);
std::optional<Method> ParseMethod(std::string_view name);

// Error codes carried in the `error` member.
namespace codes {
inline constexpr int kMalformedRequest = 400;
inline constexpr int kUnknownMethod = 404;
inline constexpr int kInvalidParams = 422;
inline constexpr int kGenerationRefused = 451;
inline constexpr int kInternal = 500;
inline constexpr int kDisabled = 501;
}  // namespace codes

using Json = nlohmann::json;

Json MakeRequest(uint64_t id, Method method, Json params);
Json MakeResult(const Json& id, Json result);
Json MakeError(const Json& id, int code, std::string message);

// Envelope shape checks used by the client and the conformance suite.
// Return an empty string when valid, otherwise a description of the defect.
std::string CheckRequestEnvelope(const Json& request);
std::string CheckResponseEnvelope(const Json& response);

// Result schema for a successful response to `method`.
std::string CheckResultSchema(Method method, const Json& result);

}  // namespace pathobench::oracle

#endif  // PATHOBENCH_ORACLE_PROTOCOL_H_
