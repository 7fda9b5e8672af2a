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

#ifndef PATHOBENCH_LOSSES_TRAIN_H_
#define PATHOBENCH_LOSSES_TRAIN_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pathobench/core/image.h"
#include "pathobench/core/rng.h"
#include "pathobench/losses/encoder.h"
#include "pathobench/losses/gradient.h"
#include "pathobench/losses/losses.h"

namespace pathobench::losses {

// One synthetic pair with all forged companions. Text sides are feature
// vectors; image sides are pixel buffers pooled on the fly.
struct ToyExample {
  int label = 0;
  Vector text;
  ImageTensor image;
  Vector neg_text;
  std::array<Vector, 4> pos_text;
  ImageTensor easy_neg_image;
  std::optional<ImageTensor> hard_neg_image;  // attached by the miner
  ImageTensor pos_image;
};

struct ToyCorpus {
  std::vector<ToyExample> train;
  std::vector<ToyExample> heldout;
};

struct ToyCorpusOptions {
  size_t pairs = 200;
  int classes = 10;
  size_t heldout = 50;
  size_t text_dim = 64;
  int image_side = 8;
  double text_noise = 0.5;
  double image_noise = 0.08;
};

// Class-prototype corpus: texts are prototype + Gaussian noise, images are a
// second, independent per-class pattern + noise. Linearly separable for the
// default noise levels.
ToyCorpus MakeSeparableCorpus(const ToyCorpusOptions& options, uint64_t seed);

RawItem ToRawItem(const ToyExample& example, const PoolingOperator& pool);

// Text-to-image top-1 retrieval within `examples`; a hit retrieves any image
// of the same class.
double RetrievalAccuracy(const ToyEncoderParams& params,
                         const std::vector<ToyExample>& examples,
                         const PoolingOperator& pool);

struct TrainOptions {
  int epochs = 20;
  size_t batch_size = 16;
  double learning_rate = 0.02;
  LossWeights weights;
};

struct TracePoint {
  int epoch = 0;  // 0 is the initial state
  double loss = 0.0;  // loss_full over the training split, per item
  double retrieval_acc = 0.0;  // on the held-out split
};

// Minibatch gradient descent with a fixed step. Throws kDivergenceDetected
// when the loss or a gradient stops being finite.
std::vector<TracePoint> TrainToy(const ToyCorpus& corpus,
                                 ToyEncoderParams& params,
                                 const TrainOptions& options, Rng& rng);

// CSV with header `epoch,loss,retrieval_acc`.
std::string FormatTraceCsv(const std::vector<TracePoint>& trace);

}  // namespace pathobench::losses

#endif  // PATHOBENCH_LOSSES_TRAIN_H_
