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

#include "pathobench/oracle/conformance.h"

#include "pathobench/core/error.h"
#include "pathobench/core/image.h"

namespace pathobench::oracle {

namespace {

struct Probe {
  std::string name;
  std::string line;
  Json expected_id;
  std::optional<Method> method;  // set when a result is acceptable
};

ConformanceCheck RunProbe(Transport& transport, const Probe& probe,
                          size_t expected_dim) {
  ConformanceCheck check{probe.name, false, ""};
  std::string reply;
  try {
    reply = transport.RoundTrip(probe.line);
  } catch (const std::exception& e) {
    check.detail = std::string("transport failure: ") + e.what();
    return check;
  }
  Json response;
  try {
    response = Json::parse(reply);
  } catch (const Json::exception&) {
    check.detail = "response is not JSON";
    return check;
  }
  if (std::string defect = CheckResponseEnvelope(response); !defect.empty()) {
    check.detail = defect;
    return check;
  }
  if (response["id"] != probe.expected_id) {
    check.detail = "id not echoed: got " + response["id"].dump();
    return check;
  }
  if (response.contains("error")) {
    const int code = response["error"]["code"].get<int>();
    if (probe.method && code != codes::kDisabled) {
      check.detail = "valid request answered with error " + std::to_string(code);
      return check;
    }
    check.passed = true;
    check.detail = probe.method ? "disabled (501)" : "error " + std::to_string(code);
    return check;
  }
  if (!probe.method) {
    check.detail = "invalid request answered with a result";
    return check;
  }
  if (std::string defect = CheckResultSchema(*probe.method, response["result"]);
      !defect.empty()) {
    check.detail = defect;
    return check;
  }
  if (response["result"].contains("dim") &&
      response["result"]["dim"].get<size_t>() != expected_dim) {
    check.detail = "dim " + response["result"]["dim"].dump() + " != " +
                   std::to_string(expected_dim);
    return check;
  }
  check.passed = true;
  check.detail = "ok";
  return check;
}

}  // namespace

std::vector<ConformanceCheck> RunConformance(Transport& transport,
                                             size_t expected_dim) {
  ImageTensor tile(8, 8, 3, 0.25);
  for (int y = 0; y < 8; ++y) tile.at(y, y, 0) = 0.75;
  const std::string png = Base64Encode(EncodePng(tile));

  std::vector<Probe> probes = {
      {"embed_text", MakeRequest(1, Method::kEmbedText,
                                 Json{{"texts", {"colon carcinoma", "gland fusion"}}})
                         .dump(),
       1, Method::kEmbedText},
      {"embed_image", MakeRequest(2, Method::kEmbedImage, Json{{"images", {png}}}).dump(),
       2, Method::kEmbedImage},
      {"mask_fill",
       MakeRequest(3, Method::kMaskFill,
                   Json{{"text", "in colon carcinoma"}, {"start", 3}, {"end", 8},
                        {"k", 3}, {"exclude_original", true}, {"seed", 0}})
           .dump(),
       3, Method::kMaskFill},
      {"generate_text",
       MakeRequest(4, Method::kGenerateText,
                   Json{{"prompt", "Pathological description: gland fusion"}, {"seed", 0}})
           .dump(),
       4, Method::kGenerateText},
      {"generate_image",
       MakeRequest(5, Method::kGenerateImage,
                   Json{{"prompt", "gland fusion"}, {"seed", 0}, {"height", 16},
                        {"width", 16}, {"channels", 3}})
           .dump(),
       5, Method::kGenerateImage},
      {"unparseable_line", "{not json", nullptr, std::nullopt},
      {"missing_params", R"({"id":6,"method":"embed_text"})", 6, std::nullopt},
      {"unknown_method", R"({"id":7,"method":"summon","params":{}})", 7, std::nullopt},
      {"bad_params", R"({"id":8,"method":"embed_text","params":{"texts":5}})", 8,
       std::nullopt},
      {"empty_prompt",
       R"({"id":9,"method":"generate_text","params":{"prompt":""}})", 9,
       std::nullopt},
  };
  std::vector<ConformanceCheck> out;
  for (const Probe& p : probes) out.push_back(RunProbe(transport, p, expected_dim));
  return out;
}

}  // namespace pathobench::oracle
