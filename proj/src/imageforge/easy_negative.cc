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

#include "pathobench/imageforge/easy_negative.h"

#include "pathobench/core/error.h"

namespace pathobench::imageforge {

EasyNegative GenerateEasyNegative(const PairRecord& pair,
                                  const std::string& corrupted_text,
                                  const ImageTensor& like, uint64_t seed,
                                  oracle::OracleClient& client) {
  if (corrupted_text.empty() || corrupted_text == pair.text) {
    throw Error(ErrorCode::kInvalidArgument,
                "pair " + pair.id + ": corrupted text must differ from the caption");
  }
  EasyNegative out;
  out.image = client.GenerateImage(corrupted_text, seed, like.height(), like.width(),
                                   like.channels());
  out.prompt = corrupted_text;
  out.seed = seed;
  out.oracle = client.Describe();
  return out;
}

}  // namespace pathobench::imageforge
