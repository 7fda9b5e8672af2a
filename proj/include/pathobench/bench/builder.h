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

#ifndef PATHOBENCH_BENCH_BUILDER_H_
#define PATHOBENCH_BENCH_BUILDER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "pathobench/core/types.h"
#include "pathobench/oracle/client.h"
#include "pathobench/oracle/image_store.h"
#include "pathobench/textperturb/perturb.h"

namespace pathobench::bench {

// Grouped instances per pair and role: information loss (both depths in one
// deletion log), semantic drift, order variation (both rotations).
inline constexpr size_t kInstancesPerRole = 3;
inline constexpr size_t kInstancesPerPair = kInstancesPerRole * 3;

struct SkipRow {
  std::string pair_id;
  std::string cell;  // InformationLoss | SemanticDrift | OrderVariation
  SemanticRole role = SemanticRole::kEntities;
  std::string reason;

  bool operator==(const SkipRow&) const = default;
};

struct BuildOptions {
  int jobs = 1;
  textperturb::SemanticDriftOptions drift;
};

struct BuildResult {
  std::vector<BenchmarkInstance> instances;
  std::vector<SkipRow> skips;
};

// Fills missing saliencies through the oracle, then emits the grouped
// instances pair by pair in corpus order. Cells whose preconditions fail
// (kInsufficientPhrases, kNoSubstituteFound, kNoPhrases) are skipped and
// reported. Throws kEmptyCorpus for an empty corpus.
BuildResult BuildBenchmark(const std::vector<PairRecord>& corpus, uint64_t seed,
                           oracle::OracleClient& client,
                           const oracle::ImageStore& images,
                           const BuildOptions& options = {});

// Per-(pair, role) semantic-drift seed; independent of scheduling.
uint64_t DriftSeed(uint64_t seed, const std::string& pair_id, SemanticRole role);

// TSV with header `pair_id\tcell\trole\treason`.
std::string FormatSkipReport(const std::vector<SkipRow>& skips);

}  // namespace pathobench::bench

#endif  // PATHOBENCH_BENCH_BUILDER_H_
