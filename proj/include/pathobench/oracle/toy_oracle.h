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

#ifndef PATHOBENCH_ORACLE_TOY_ORACLE_H_
#define PATHOBENCH_ORACLE_TOY_ORACLE_H_

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pathobench/core/image.h"
#include "pathobench/oracle/protocol.h"

namespace pathobench::oracle {

struct ToyOracleOptions {
  uint64_t seed = 0;
  size_t dim = 64;
  // Vocabulary groups for mask_fill; a masked token draws candidates from
  // the group that contains it, or from the union of all groups.
  std::vector<std::vector<std::string>> term_groups;
  // Methods answered with error 501.
  std::set<Method> disabled;
  // Generation prompts containing any of these substrings are refused (451).
  std::vector<std::string> refuse_substrings;
};

struct MaskCandidate {
  std::string token;
  double score = 0.0;
};

// Deterministic in-process model oracle. Every method is a pure function of
// its inputs and the configured seed, and Handle() is reentrant.
//
// Text embeddings hash character 3-grams of the case-folded text (padded
// with one space on each side) into `dim` signed buckets. Images generated
// from a prompt carry the prompt's text embedding as a weighted sum of
// seeded +-1 basis patterns on top of smooth value noise; image embeddings
// read those pattern coefficients back and add a small random projection of
// colour and edge statistics, so the two modalities share one space.
class ToyOracle {
 public:
  explicit ToyOracle(ToyOracleOptions options = {});

  Json Handle(const Json& request) const;
  // Parses one wire line and answers it; malformed input yields an error
  // response with a null id.
  std::string HandleLine(std::string_view line) const;

  std::vector<double> EmbedText(std::string_view text) const;
  std::vector<double> EmbedImage(const ImageTensor& image) const;
  std::vector<MaskCandidate> MaskFill(std::string_view text, size_t start,
                                      size_t end, size_t k,
                                      bool exclude_original,
                                      uint64_t seed) const;
  std::string GenerateText(std::string_view prompt, uint64_t seed) const;
  ImageTensor GenerateImage(std::string_view prompt, uint64_t seed, int height,
                            int width, int channels) const;

  const ToyOracleOptions& options() const { return options_; }

 private:
  // dim patterns over height*width pixels, each with entries +-1/sqrt(hw).
  std::shared_ptr<const std::vector<std::vector<double>>> Basis(int height,
                                                                int width) const;
  Json Dispatch(Method method, const Json& params) const;

  ToyOracleOptions options_;
  std::vector<std::vector<double>> stats_projection_;
  mutable std::mutex basis_mu_;
  mutable std::map<std::pair<int, int>,
                   std::shared_ptr<const std::vector<std::vector<double>>>>
      basis_cache_;
};

}  // namespace pathobench::oracle

#endif  // PATHOBENCH_ORACLE_TOY_ORACLE_H_
