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

#ifndef PATHOBENCH_ORACLE_CLIENT_H_
#define PATHOBENCH_ORACLE_CLIENT_H_

#include <atomic>
#include <cstdint>
#include <fstream>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "pathobench/core/image.h"
#include "pathobench/oracle/embedding.h"
#include "pathobench/oracle/protocol.h"
#include "pathobench/oracle/toy_oracle.h"
#include "pathobench/oracle/transport.h"

namespace pathobench::oracle {

struct ClientOptions {
  size_t dim = 64;
  // Extra attempts after a transport failure.
  int retries = 2;
  // When non-empty, every exchange is appended to this JSONL file.
  std::string transcript_path;
};

// Typed front end of the oracle protocol. Splits batches at 64 items,
// matches responses by id, validates result schemas and maps protocol
// errors onto ErrorCodes. Safe for concurrent use.
class OracleClient {
 public:
  OracleClient(std::unique_ptr<Transport> transport, ClientOptions options = {});

  // Convenience: in-process toy oracle.
  static std::unique_ptr<OracleClient> Toy(ToyOracleOptions toy = {},
                                           ClientOptions options = {});

  std::vector<Embedding> EmbedText(const std::vector<std::string>& texts);
  std::vector<Embedding> EmbedImages(const std::vector<ImageTensor>& images);
  std::vector<MaskCandidate> MaskFill(const std::string& text, size_t start,
                                      size_t end, size_t k,
                                      bool exclude_original, uint64_t seed);
  std::string GenerateText(const std::string& prompt, uint64_t seed);
  ImageTensor GenerateImage(const std::string& prompt, uint64_t seed,
                            int height, int width, int channels);

  // Raw call returning the `result` object.
  Json Call(Method method, Json params);

  // Order-independent digest of every exchange so far (ids excluded).
  uint64_t TranscriptDigest() const { return digest_.load(); }
  size_t dim() const { return options_.dim; }
  std::string Describe() const { return transport_->Describe(); }

 private:
  std::vector<Embedding> ParseEmbeddings(const Json& result, size_t expected);

  std::unique_ptr<Transport> transport_;
  ClientOptions options_;
  std::atomic<uint64_t> next_id_{1};
  std::atomic<uint64_t> digest_{0};
  std::mutex transcript_mu_;
  std::ofstream transcript_;
};

}  // namespace pathobench::oracle

#endif  // PATHOBENCH_ORACLE_CLIENT_H_
