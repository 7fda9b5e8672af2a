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

#ifndef PATHOBENCH_LOSSES_GRADIENT_H_
#define PATHOBENCH_LOSSES_GRADIENT_H_

#include <array>
#include <optional>
#include <vector>

#include "pathobench/losses/encoder.h"
#include "pathobench/losses/losses.h"

namespace pathobench::losses {

// Encoder inputs for one item: text features and pooled images.
struct RawItem {
  Vector text;
  Vector image;
  std::optional<Vector> neg_text;
  std::optional<Vector> easy_neg_image;
  std::optional<Vector> hard_neg_image;
  std::optional<std::array<Vector, 4>> pos_text;
  std::optional<Vector> pos_image;
};

using RawBatch = std::vector<RawItem>;

// Throws kMissingComponent when a companion is present on some items only.
EmbeddingBatch Encode(const ToyEncoderParams& params, const RawBatch& batch);

double FullLoss(const RawBatch& batch, const ToyEncoderParams& params,
                const LossWeights& weights);

struct FullGradient {
  double loss = 0.0;
  Matrix d_text_proj;
  Matrix d_img_proj;
  double d_log_temperature = 0.0;
  // Gradient with respect to every input vector, same shape as the batch.
  // Filled only when requested.
  RawBatch d_inputs;

  std::vector<double> FlatParams() const;  // ToyEncoderParams::Flatten order
};

// Throws kNonFiniteGradient if any entry is not finite.
FullGradient GradFull(const RawBatch& batch, const ToyEncoderParams& params,
                      const LossWeights& weights, bool input_grads = false);

}  // namespace pathobench::losses

#endif  // PATHOBENCH_LOSSES_GRADIENT_H_
