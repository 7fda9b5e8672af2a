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

#include "pathobench/oracle/protocol.h"

#include <array>

namespace pathobench::oracle {

namespace {

constexpr std::array<std::pair<Method, std::string_view>, 5> kMethods = {{
    {Method::kEmbedText, "embed_text"},
    {Method::kEmbedImage, "embed_image"},
    {Method::kMaskFill, "mask_fill"},
    {Method::kGenerateText, "generate_text"},
    {Method::kGenerateImage, "generate_image"},
}};

std::string CheckEmbeddings(const Json& result) {
  if (!result.contains("embeddings") || !result["embeddings"].is_array()) {
    return "result.embeddings must be an array";
  }
  if (!result.contains("dim") || !result["dim"].is_number_unsigned()) {
    return "result.dim must be an unsigned integer";
  }
  const size_t dim = result["dim"].get<size_t>();
  for (const Json& e : result["embeddings"]) {
    if (!e.is_array() || e.size() != dim) {
      return "every embedding must be an array of length dim";
    }
    for (const Json& x : e) {
      if (!x.is_number()) return "embedding entries must be numbers";
    }
  }
  return "";
}

}  // namespace

std::string_view MethodName(Method method) {
  for (const auto& [m, name] : kMethods) {
    if (m == method) return name;
  }
  return "";
}

std::optional<Method> ParseMethod(std::string_view name) {
  for (const auto& [m, n] : kMethods) {
    if (n == name) return m;
  }
  return std::nullopt;
}

Json MakeRequest(uint64_t id, Method method, Json params) {
  return Json{{"id", id},
              {"method", std::string(MethodName(method))},
              {"params", std::move(params)}};
}

Json MakeResult(const Json& id, Json result) {
  return Json{{"id", id}, {"result", std::move(result)}};
}

Json MakeError(const Json& id, int code, std::string message) {
  return Json{{"id", id},
              {"error", Json{{"code", code}, {"message", std::move(message)}}}};
}

std::string CheckRequestEnvelope(const Json& request) {
  if (!request.is_object()) return "request must be a JSON object";
  if (!request.contains("id") || !request["id"].is_number_unsigned()) {
    return "request.id must be an unsigned integer";
  }
  if (!request.contains("method") || !request["method"].is_string()) {
    return "request.method must be a string";
  }
  if (!request.contains("params") || !request["params"].is_object()) {
    return "request.params must be an object";
  }
  return "";
}

std::string CheckResponseEnvelope(const Json& response) {
  if (!response.is_object()) return "response must be a JSON object";
  if (!response.contains("id")) return "response.id missing";
  if (!response["id"].is_number_unsigned() && !response["id"].is_null()) {
    return "response.id must be an unsigned integer or null";
  }
  const bool has_result = response.contains("result");
  const bool has_error = response.contains("error");
  if (has_result == has_error) {
    return "exactly one of result/error must be present";
  }
  if (has_result && !response["result"].is_object()) {
    return "response.result must be an object";
  }
  if (has_error) {
    const Json& e = response["error"];
    if (!e.is_object() || !e.contains("code") || !e["code"].is_number_integer() ||
        !e.contains("message") || !e["message"].is_string()) {
      return "response.error must be {code:int, message:str}";
    }
  }
  if (response.size() != 2) return "response has unexpected members";
  return "";
}

std::string CheckResultSchema(Method method, const Json& result) {
  switch (method) {
    case Method::kEmbedText:
    case Method::kEmbedImage:
      return CheckEmbeddings(result);
    case Method::kMaskFill: {
      if (!result.contains("candidates") || !result["candidates"].is_array()) {
        return "result.candidates must be an array";
      }
      for (const Json& c : result["candidates"]) {
        if (!c.is_object() || !c.contains("token") || !c["token"].is_string() ||
            !c.contains("score") || !c["score"].is_number()) {
          return "candidate must be {token:str, score:number}";
        }
      }
      return "";
    }
    case Method::kGenerateText:
      if (!result.contains("text") || !result["text"].is_string()) {
        return "result.text must be a string";
      }
      return "";
    case Method::kGenerateImage:
      if (!result.contains("image") || !result["image"].is_string()) {
        return "result.image must be a base64 PNG string";
      }
      return "";
  }
  return "unknown method";
}

}  // namespace pathobench::oracle
