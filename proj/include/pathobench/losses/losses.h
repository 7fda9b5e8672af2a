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

#ifndef PATHOBENCH_LOSSES_LOSSES_H_
#define PATHOBENCH_LOSSES_LOSSES_H_

#include <array>
#include <vector>

#include "pathobench/losses/encoder.h"

namespace pathobench::losses {

struct LossWeights {
  double w_neg = 1.0;
  double w_pos = 1.0;
};

// Encoded batch. Companion vectors are either empty (absent) or index-aligned
// with `text`.
struct EmbeddingBatch {
  std::vector<Vector> text;
  std::vector<Vector> image;
  std::vector<Vector> neg_text;
  std::vector<Vector> easy_neg_image;
  std::vector<Vector> hard_neg_image;
  std::vector<std::array<Vector, 4>> pos_text;
  std::vector<Vector> pos_image;

  size_t size() const { return text.size(); }
};

// S = exp(temperature * cos(t, i)).
double Similarity(const Vector& t, const Vector& i, double temperature);
double Cosine(const Vector& a, const Vector& b);

// All losses use -log and sum over batch items.
double LossContrastive(const EmbeddingBatch& b, double temperature);
double LossNegativeText(const EmbeddingBatch& b, double temperature);
double LossNegativeEasyImage(const EmbeddingBatch& b, double temperature);
double LossNegativeHardImage(const EmbeddingBatch& b, double temperature);
double LossNegativeTotal(const EmbeddingBatch& b, double temperature);
double LossPositiveTextText(const EmbeddingBatch& b, double temperature);
double LossPositiveTextImage(const EmbeddingBatch& b, double temperature);
double LossPositiveImage(const EmbeddingBatch& b, double temperature);
double LossPositiveTotal(const EmbeddingBatch& b, double temperature);
// L_con + w_neg * L_neg + w_pos * L_pos. A zero weight skips its group, so
// the companions it needs may be absent.
double LossFull(const EmbeddingBatch& b, double temperature,
                const LossWeights& weights);

struct EmbeddingGradient {
  double loss = 0.0;
  EmbeddingBatch d;  // same shape as the input batch
  double d_temperature = 0.0;
};

EmbeddingGradient LossFullGradient(const EmbeddingBatch& b, double temperature,
                                   const LossWeights& weights);

}  // namespace pathobench::losses

#endif  // PATHOBENCH_LOSSES_LOSSES_H_
