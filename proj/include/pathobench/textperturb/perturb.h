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

#ifndef PATHOBENCH_TEXTPERTURB_PERTURB_H_
#define PATHOBENCH_TEXTPERTURB_PERTURB_H_

#include <array>
#include <cstdint>
#include <string>

#include "pathobench/core/rng.h"
#include "pathobench/core/types.h"
#include "pathobench/oracle/client.h"

namespace pathobench::textperturb {

std::string InstanceId(const PairRecord& pair, PerturbationType type,
                       SemanticRole role);

// Deletes the `depth` most salient spans of `role` (ties: earlier offset).
// Requires >= 2 role spans with saliency; throws kInsufficientPhrases.
BenchmarkInstance PerturbInformationLoss(const PairRecord& pair,
                                         SemanticRole role, int depth);

struct SemanticDriftOptions {
  // Token re-draws allowed when no candidate differs from the original.
  int max_attempts = 5;
  size_t candidates = 8;
};

// Masks one token inside a uniformly chosen role span and substitutes the
// best mask-fill candidate that differs from it (case-insensitive) and is a
// single word. Throws kInsufficientPhrases or kNoSubstituteFound.
BenchmarkInstance PerturbSemanticDrift(const PairRecord& pair,
                                       SemanticRole role, uint64_t seed,
                                       oracle::OracleClient& client,
                                       const SemanticDriftOptions& options = {});

// Cyclic rotations of the three most salient role spans: variant 1 places
// (C, A, B), variant 2 places (B, C, A) at the slots holding (A, B, C).
std::array<BenchmarkInstance, 2> PerturbOrderVariation(const PairRecord& pair,
                                                       SemanticRole role);

// Folds both order variants into one instance whose edit log carries both
// permutations; perturbed_text holds variant 1.
BenchmarkInstance GroupOrderVariants(const std::array<BenchmarkInstance, 2>& variants);

inline const std::vector<size_t> kRotateRight = {2, 0, 1};
inline const std::vector<size_t> kRotateLeft = {1, 2, 0};

}  // namespace pathobench::textperturb

#endif  // PATHOBENCH_TEXTPERTURB_PERTURB_H_
