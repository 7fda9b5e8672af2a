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

#include "pathobench/oracle/client.h"

#include <cmath>

#include "pathobench/core/error.h"
#include "pathobench/core/hash.h"

namespace pathobench::oracle {

namespace {

ErrorCode MapErrorCode(int code) {
  switch (code) {
    case codes::kGenerationRefused: return ErrorCode::kGenerationRefused;
    case codes::kMalformedRequest:
    case codes::kUnknownMethod:
    case codes::kInvalidParams: return ErrorCode::kProtocolError;
    default: return ErrorCode::kOracleUnavailable;
  }
}

}  // namespace

OracleClient::OracleClient(std::unique_ptr<Transport> transport,
                           ClientOptions options)
    : transport_(std::move(transport)), options_(std::move(options)) {
  if (!options_.transcript_path.empty()) {
    transcript_.open(options_.transcript_path, std::ios::app);
    if (!transcript_) {
      throw Error(ErrorCode::kIoError,
                  "cannot open transcript " + options_.transcript_path);
    }
  }
}

std::unique_ptr<OracleClient> OracleClient::Toy(ToyOracleOptions toy,
                                                ClientOptions options) {
  options.dim = toy.dim;
  return std::make_unique<OracleClient>(
      std::make_unique<InProcessTransport>(
          std::make_shared<const ToyOracle>(std::move(toy))),
      std::move(options));
}

Json OracleClient::Call(Method method, Json params) {
  const uint64_t id = next_id_++;
  const Json request = MakeRequest(id, method, std::move(params));
  const std::string line = request.dump();
  std::string reply;
  for (int attempt = 0;; ++attempt) {
    try {
      reply = transport_->RoundTrip(line);
      break;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kOracleUnavailable || attempt >= options_.retries) {
        throw;
      }
    }
  }
  Json response;
  try {
    response = Json::parse(reply);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kProtocolError,
                std::string("unparseable oracle response: ") + e.what());
  }
  if (std::string defect = CheckResponseEnvelope(response); !defect.empty()) {
    throw Error(ErrorCode::kProtocolError, defect);
  }
  if (!response["id"].is_number_unsigned() ||
      response["id"].get<uint64_t>() != id) {
    throw Error(ErrorCode::kProtocolError,
                "response id does not echo request id " + std::to_string(id));
  }

  {
    Json req_no_id = request;
    req_no_id.erase("id");
    Json resp_no_id = response;
    resp_no_id.erase("id");
    const uint64_t h =
        Mix64(Fnv1a64(resp_no_id.dump(), Fnv1a64(req_no_id.dump())));
    digest_ += h;
    if (transcript_.is_open()) {
      std::lock_guard<std::mutex> lock(transcript_mu_);
      transcript_ << Json{{"request", request}, {"response", response}}.dump()
                  << '\n';
      transcript_.flush();
    }
  }

  if (response.contains("error")) {
    const Json& e = response["error"];
    throw Error(MapErrorCode(e["code"].get<int>()),
                std::string(MethodName(method)) + " failed (" +
                    std::to_string(e["code"].get<int>()) +
                    "): " + e["message"].get<std::string>());
  }
  Json result = response["result"];
  if (std::string defect = CheckResultSchema(method, result); !defect.empty()) {
    throw Error(ErrorCode::kProtocolError, defect);
  }
  return result;
}

std::vector<Embedding> OracleClient::ParseEmbeddings(const Json& result,
                                                     size_t expected) {
  const size_t dim = result["dim"].get<size_t>();
  if (dim != options_.dim) {
    throw Error(ErrorCode::kDimensionMismatch,
                "oracle returned " + std::to_string(dim) +
                    "-dim embeddings, configured " + std::to_string(options_.dim));
  }
  if (result["embeddings"].size() != expected) {
    throw Error(ErrorCode::kProtocolError, "embedding count mismatch");
  }
  std::vector<Embedding> out;
  for (const Json& e : result["embeddings"]) {
    std::vector<double> v = e.get<std::vector<double>>();
    for (double x : v) {
      if (!std::isfinite(x)) {
        throw Error(ErrorCode::kProtocolError, "non-finite embedding entry");
      }
    }
    out.push_back(MakeNormalized(std::move(v)));
  }
  return out;
}

std::vector<Embedding> OracleClient::EmbedText(
    const std::vector<std::string>& texts) {
  if (texts.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "embed_text needs at least one text");
  }
  std::vector<Embedding> out;
  for (size_t i = 0; i < texts.size(); i += kMaxBatch) {
    const size_t n = std::min(kMaxBatch, texts.size() - i);
    std::vector<std::string> chunk(texts.begin() + i, texts.begin() + i + n);
    auto part = ParseEmbeddings(
        Call(Method::kEmbedText, Json{{"texts", std::move(chunk)}}), n);
    std::move(part.begin(), part.end(), std::back_inserter(out));
  }
  return out;
}

std::vector<Embedding> OracleClient::EmbedImages(
    const std::vector<ImageTensor>& images) {
  if (images.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "embed_image needs at least one image");
  }
  std::vector<Embedding> out;
  for (size_t i = 0; i < images.size(); i += kMaxBatch) {
    const size_t n = std::min(kMaxBatch, images.size() - i);
    Json encoded = Json::array();
    for (size_t j = i; j < i + n; ++j) {
      encoded.push_back(Base64Encode(EncodePng(images[j])));
    }
    auto part = ParseEmbeddings(
        Call(Method::kEmbedImage, Json{{"images", std::move(encoded)}}), n);
    std::move(part.begin(), part.end(), std::back_inserter(out));
  }
  return out;
}

std::vector<MaskCandidate> OracleClient::MaskFill(const std::string& text,
                                                  size_t start, size_t end,
                                                  size_t k,
                                                  bool exclude_original,
                                                  uint64_t seed) {
  if (start >= end || end > text.size()) {
    throw Error(ErrorCode::kSpanOutOfBounds,
                "mask span [" + std::to_string(start) + "," +
                    std::to_string(end) + ") outside text");
  }
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  const Json result = Call(Method::kMaskFill,
                           Json{{"text", text},
                                {"start", start},
                                {"end", end},
                                {"k", k},
                                {"exclude_original", exclude_original},
                                {"seed", seed}});
  std::vector<MaskCandidate> out;
  for (const Json& c : result["candidates"]) {
    out.push_back({c["token"].get<std::string>(), c["score"].get<double>()});
  }
  return out;
}

std::string OracleClient::GenerateText(const std::string& prompt, uint64_t seed) {
  if (prompt.empty()) throw Error(ErrorCode::kInvalidArgument, "empty prompt");
  return Call(Method::kGenerateText, Json{{"prompt", prompt}, {"seed", seed}})["text"]
      .get<std::string>();
}

ImageTensor OracleClient::GenerateImage(const std::string& prompt,
                                        uint64_t seed, int height, int width,
                                        int channels) {
  if (prompt.empty()) throw Error(ErrorCode::kInvalidArgument, "empty prompt");
  const Json result = Call(Method::kGenerateImage,
                           Json{{"prompt", prompt},
                                {"seed", seed},
                                {"height", height},
                                {"width", width},
                                {"channels", channels}});
  return DecodePng(Base64Decode(result["image"].get<std::string>()));
}

}  // namespace pathobench::oracle
