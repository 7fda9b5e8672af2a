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

#ifndef PATHOBENCH_BENCH_TOY_CORPUS_H_
#define PATHOBENCH_BENCH_TOY_CORPUS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "pathobench/core/types.h"
#include "pathobench/oracle/client.h"
#include "pathobench/oracle/image_store.h"

namespace pathobench::bench {

// Synthetic captions with three Descriptors, five Entities and three
// Connections spans each (all terms from the shipped role lexicon), so every
// pair qualifies for every benchmark cell. Images come from generate_image on
// the caption and are registered in `store`; image_ref holds the store id.
// Single-word vocabulary of the toy captions, one group per role. Handing
// these to the toy oracle lets mask_fill propose in-role substitutes.
std::vector<std::vector<std::string>> ToyTermGroups();

std::vector<PairRecord> MakeToyBenchCorpus(size_t n, uint64_t seed,
                                           oracle::OracleClient& client,
                                           oracle::ImageStore& store,
                                           int image_side = 32);

}  // namespace pathobench::bench

#endif  // PATHOBENCH_BENCH_TOY_CORPUS_H_
