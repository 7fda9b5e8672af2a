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

#ifndef PATHOBENCH_BENCH_EVALUATE_H_
#define PATHOBENCH_BENCH_EVALUATE_H_

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "pathobench/core/types.h"
#include "pathobench/losses/encoder.h"
#include "pathobench/oracle/client.h"
#include "pathobench/oracle/image_store.h"

namespace pathobench::bench {

// Scores texts against one image; higher means a better match. Must be safe
// to call concurrently.
class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual std::vector<double> Score(const std::string& image_ref,
                                    const std::vector<std::string>& texts) = 0;
  virtual std::string Name() const = 0;
};

// Cosine of oracle text and image embeddings.
std::unique_ptr<Scorer> MakeOracleScorer(oracle::OracleClient& client,
                                         const oracle::ImageStore& images);
// Cosine under a toy encoder; text features are oracle text embeddings.
std::unique_ptr<Scorer> MakeToyEncoderScorer(const losses::ToyEncoderParams& params,
                                             oracle::OracleClient& client,
                                             const oracle::ImageStore& images);
// Uniform score hashed from (seed, image_ref, text).
std::unique_ptr<Scorer> MakeRandomScorer(uint64_t seed);
// Every text scores 0, so every trial is a tie.
std::unique_ptr<Scorer> MakeConstantScorer();
// 1 for the original caption of the image, 0 otherwise.
std::unique_ptr<Scorer> MakePerfectScorer(const std::vector<BenchmarkInstance>& instances);

struct AccuracyCell {
  int64_t n = 0;   // trials (grouped order variation counts once)
  double k = 0.0;  // successes; grouped order variation adds 0, 0.5 or 1

  // NaN for an empty cell.
  double accuracy() const;
  static AccuracyCell FromAccuracy(double accuracy) { return {1, accuracy}; }

  bool operator==(const AccuracyCell&) const = default;
};

// 4 perturbation columns x 3 roles.
struct AccuracyGrid {
  std::array<std::array<AccuracyCell, 3>, 4> cells{};

  AccuracyCell& at(PerturbationType p, SemanticRole r) {
    return cells[static_cast<size_t>(p)][static_cast<size_t>(r)];
  }
  const AccuracyCell& at(PerturbationType p, SemanticRole r) const {
    return cells[static_cast<size_t>(p)][static_cast<size_t>(r)];
  }
  // The 12 accuracies, perturbation-major.
  std::array<double, 12> Accuracies() const;
  static AccuracyGrid FromAccuracies(const std::array<double, 12>& values);

  bool operator==(const AccuracyGrid&) const = default;
};

// A trial succeeds iff score(original) > score(variant). A deletion log with
// two spans yields one trial per depth (depth 1 goes to the InformationLoss1
// column); a grouped order-variation instance contributes the mean of its
// variant trials. Throws kScorerFailure naming the instance on scorer errors
// or non-finite scores.
AccuracyGrid Evaluate(const std::vector<BenchmarkInstance>& instances,
                      Scorer& scorer, int jobs = 1);

}  // namespace pathobench::bench

#endif  // PATHOBENCH_BENCH_EVALUATE_H_
