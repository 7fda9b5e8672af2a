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

#ifndef PATHOBENCH_IMAGEFORGE_MINER_H_
#define PATHOBENCH_IMAGEFORGE_MINER_H_

#include <string>
#include <vector>

#include "pathobench/core/config.h"
#include "pathobench/core/image.h"
#include "pathobench/losses/encoder.h"
#include "pathobench/losses/train.h"

namespace pathobench::imageforge {

struct MinerConfig {
  double lambda = 0.1;
  double budget_m = 1.0;
  double step_size = 0.05;
  int max_iters = 50;
  double stop_tolerance = 1e-4;
  int max_backtracks = 40;

  void Validate() const;
  // Reads `miner.*` keys; unknown keys are a kSchemaError.
  static MinerConfig FromConfig(const KeyValueConfig& cfg);
};

// Mean over index-paired images of ||f_I(a_i) - f_I(b_i)||^2 with unnormalized
// projected features. Throws kLengthMismatch for unequal batches.
double FeatureDistance(const std::vector<ImageTensor>& a,
                       const std::vector<ImageTensor>& b,
                       const losses::ToyEncoderParams& params);

struct MinerStep {
  int iter = 0;
  double objective = 0.0;  // J
  double distance = 0.0;   // D
};

struct MinerResult {
  ImageTensor image;
  std::vector<MinerStep> trace;  // accepted steps only
  std::string stop_reason;  // max_iters | budget | converged | stalled
};

// Ascent on J = L - lambda * D where L = -log sigmoid(tau * cos(f_T(text),
// f_I(image))) and D is the squared feature displacement from the input.
// Each iteration backtracks (halving) until J increases; a step that would
// leave the budget is shortened by bisection to land on D <= m and ends the
// run. Pixels are clamped to [0,1] after every step.
MinerResult MineHardNegative(const ImageTensor& image,
                             const losses::Vector& text_features,
                             const losses::ToyEncoderParams& params,
                             const MinerConfig& cfg);

// CSV with header `iter,J,D`.
std::string FormatMinerTraceCsv(const std::vector<MinerStep>& trace);

// Mines a hard negative for every training and held-out example from its own
// image and text under `params`.
void AttachHardNegatives(losses::ToyCorpus& corpus,
                         const losses::ToyEncoderParams& params,
                         const MinerConfig& cfg, int jobs);

}  // namespace pathobench::imageforge

#endif  // PATHOBENCH_IMAGEFORGE_MINER_H_
