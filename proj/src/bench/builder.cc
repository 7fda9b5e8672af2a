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

#include "pathobench/bench/builder.h"

#include <algorithm>

#include "pathobench/core/error.h"
#include "pathobench/core/hash.h"
#include "pathobench/core/parallel.h"
#include "pathobench/oracle/saliency.h"

namespace pathobench::bench {

namespace {

bool Skippable(ErrorCode code) {
  return code == ErrorCode::kInsufficientPhrases ||
         code == ErrorCode::kNoSubstituteFound || code == ErrorCode::kNoPhrases;
}

constexpr const char* kCells[3] = {"InformationLoss", "SemanticDrift", "OrderVariation"};

struct PairOutput {
  std::vector<BenchmarkInstance> instances;
  std::vector<SkipRow> skips;
};

PairOutput BuildPair(const PairRecord& input, uint64_t seed,
                     oracle::OracleClient& client, const oracle::ImageStore& images,
                     const BuildOptions& options) {
  PairOutput out;
  PairRecord pair = input;
  try {
    ValidatePhrases(pair);
    const bool filled = !pair.phrases.empty() &&
                        std::all_of(pair.phrases.begin(), pair.phrases.end(),
                                    [](const PhraseSpan& s) { return s.saliency.has_value(); });
    if (!filled) pair = oracle::PhraseImageSaliency(pair, client, images);
  } catch (const Error& e) {
    if (!Skippable(e.code())) throw;
    for (SemanticRole role : kAllRoles) {
      for (const char* cell : kCells) out.skips.push_back({pair.id, cell, role, e.what()});
    }
    return out;
  }

  for (SemanticRole role : kAllRoles) {
    for (int cell = 0; cell < 3; ++cell) {
      try {
        switch (cell) {
          case 0:
            out.instances.push_back(textperturb::PerturbInformationLoss(pair, role, 2));
            break;
          case 1: {
            BenchmarkInstance inst = textperturb::PerturbSemanticDrift(
                pair, role, DriftSeed(seed, pair.id, role), client, options.drift);
            out.instances.push_back(std::move(inst));
            break;
          }
          default:
            out.instances.push_back(
                textperturb::GroupOrderVariants(textperturb::PerturbOrderVariation(pair, role)));
            break;
        }
      } catch (const Error& e) {
        if (!Skippable(e.code())) throw;
        out.skips.push_back({pair.id, kCells[cell], role, e.what()});
      }
    }
  }
  return out;
}

std::string Sanitize(std::string s) {
  std::replace(s.begin(), s.end(), '\t', ' ');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

}  // namespace

uint64_t DriftSeed(uint64_t seed, const std::string& pair_id, SemanticRole role) {
  return Mix64(Mix64(seed) ^ Fnv1a64(pair_id) ^ (static_cast<uint64_t>(role) + 1));
}

BuildResult BuildBenchmark(const std::vector<PairRecord>& corpus, uint64_t seed,
                           oracle::OracleClient& client,
                           const oracle::ImageStore& images,
                           const BuildOptions& options) {
  if (corpus.empty()) throw Error(ErrorCode::kEmptyCorpus, "corpus is empty");
  std::vector<PairOutput> per_pair(corpus.size());
  ParallelFor(corpus.size(), options.jobs, [&](size_t i) {
    per_pair[i] = BuildPair(corpus[i], seed, client, images, options);
  });
  BuildResult result;
  for (PairOutput& p : per_pair) {
    std::move(p.instances.begin(), p.instances.end(), std::back_inserter(result.instances));
    std::move(p.skips.begin(), p.skips.end(), std::back_inserter(result.skips));
  }
  return result;
}

std::string FormatSkipReport(const std::vector<SkipRow>& skips) {
  std::string out = "pair_id\tcell\trole\treason\n";
  for (const SkipRow& s : skips) {
    out += Sanitize(s.pair_id) + "\t" + s.cell + "\t" + std::string(RoleName(s.role)) +
           "\t" + Sanitize(s.reason) + "\n";
  }
  return out;
}

}  // namespace pathobench::bench
