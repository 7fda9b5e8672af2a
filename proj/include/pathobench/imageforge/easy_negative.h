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

#ifndef PATHOBENCH_IMAGEFORGE_EASY_NEGATIVE_H_
#define PATHOBENCH_IMAGEFORGE_EASY_NEGATIVE_H_

#include <cstdint>
#include <string>

#include "pathobench/core/image.h"
#include "pathobench/core/types.h"
#include "pathobench/oracle/client.h"

namespace pathobench::imageforge {

struct EasyNegative {
  ImageTensor image;
  std::string prompt;  // the corrupted text the image was generated from
  uint64_t seed = 0;
  std::string oracle;  // transport description
};

// generate_image on the corrupted caption, at the geometry of `like`.
EasyNegative GenerateEasyNegative(const PairRecord& pair,
                                  const std::string& corrupted_text,
                                  const ImageTensor& like, uint64_t seed,
                                  oracle::OracleClient& client);

}  // namespace pathobench::imageforge

#endif  // PATHOBENCH_IMAGEFORGE_EASY_NEGATIVE_H_
