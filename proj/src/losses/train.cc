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

#include "pathobench/losses/train.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pathobench/core/error.h"
#include "pathobench/core/formats.h"

namespace pathobench::losses {

namespace {

Vector NoisyCopy(const Vector& base, double sigma, Rng& rng) {
  Vector v = base;
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] += sigma * rng.Normal();
  return v;
}

ImageTensor NoisyImage(const Vector& pattern, int side, double sigma, Rng& rng) {
  ImageTensor img(side, side, 1);
  for (int p = 0; p < side * side; ++p) {
    img.values()[p] = 0.5 + 0.2 * pattern[p] + sigma * rng.Normal();
  }
  img.Clamp();
  return img;
}

}  // namespace

ToyCorpus MakeSeparableCorpus(const ToyCorpusOptions& o, uint64_t seed) {
  if (o.classes < 2 || o.pairs <= o.heldout || o.heldout == 0) {
    throw Error(ErrorCode::kInvalidArgument, "toy corpus needs >= 2 classes and both splits");
  }
  Rng rng(seed);
  Rng proto_rng = rng.Split(1);
  std::vector<Vector> text_proto, image_proto;
  const int pixels = o.image_side * o.image_side;
  for (int c = 0; c < o.classes; ++c) {
    text_proto.push_back(NoisyCopy(Vector::Zero(o.text_dim), 1.0, proto_rng));
    image_proto.push_back(NoisyCopy(Vector::Zero(pixels), 1.0, proto_rng));
  }
  Rng item_rng = rng.Split(2);
  std::vector<ToyExample> all;
  for (size_t n = 0; n < o.pairs; ++n) {
    ToyExample ex;
    ex.label = static_cast<int>(n % o.classes);
    const int other = static_cast<int>(
        (ex.label + 1 + item_rng.UniformInt(o.classes - 1)) % o.classes);
    ex.text = NoisyCopy(text_proto[ex.label], o.text_noise, item_rng);
    ex.image = NoisyImage(image_proto[ex.label], o.image_side, o.image_noise, item_rng);
    ex.neg_text = NoisyCopy(text_proto[other], o.text_noise, item_rng);
    for (Vector& p : ex.pos_text) p = NoisyCopy(ex.text, 0.5 * o.text_noise, item_rng);
    ex.easy_neg_image = NoisyImage(image_proto[other], o.image_side, o.image_noise, item_rng);
    ex.pos_image = ex.image;
    for (double& v : ex.pos_image.values()) v += 0.5 * o.image_noise * item_rng.Normal();
    ex.pos_image.Clamp();
    all.push_back(std::move(ex));
  }
  std::span<ToyExample> view(all);
  rng.Split(3).Shuffle(view);
  ToyCorpus corpus;
  corpus.heldout.assign(all.begin(), all.begin() + o.heldout);
  corpus.train.assign(all.begin() + o.heldout, all.end());
  return corpus;
}

RawItem ToRawItem(const ToyExample& ex, const PoolingOperator& pool) {
  RawItem item;
  item.text = ex.text;
  item.image = pool.Pool(ex.image);
  item.neg_text = ex.neg_text;
  item.easy_neg_image = pool.Pool(ex.easy_neg_image);
  if (ex.hard_neg_image) item.hard_neg_image = pool.Pool(*ex.hard_neg_image);
  item.pos_text = ex.pos_text;
  item.pos_image = pool.Pool(ex.pos_image);
  return item;
}

double RetrievalAccuracy(const ToyEncoderParams& params,
                         const std::vector<ToyExample>& examples,
                         const PoolingOperator& pool) {
  if (examples.empty()) throw Error(ErrorCode::kEmptyCorpus, "no retrieval examples");
  std::vector<Vector> images;
  for (const ToyExample& ex : examples) {
    Vector f = params.EncodeImage(pool.Pool(ex.image));
    images.push_back(f / f.norm());
  }
  size_t hits = 0;
  for (const ToyExample& ex : examples) {
    const Vector t = params.EncodeText(ex.text);
    size_t best = 0;
    double best_score = -HUGE_VAL;
    for (size_t j = 0; j < images.size(); ++j) {
      const double s = t.dot(images[j]);
      if (s > best_score) {
        best_score = s;
        best = j;
      }
    }
    hits += examples[best].label == ex.label;
  }
  return static_cast<double>(hits) / examples.size();
}

std::vector<TracePoint> TrainToy(const ToyCorpus& corpus, ToyEncoderParams& params,
                                 const TrainOptions& options, Rng& rng) {
  if (corpus.train.empty() || corpus.heldout.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "toy corpus has an empty split");
  }
  if (options.batch_size == 0 || options.epochs < 0 || options.learning_rate < 0) {
    throw Error(ErrorCode::kInvalidArgument, "bad training options");
  }
  params.Validate();
  const ImageTensor& probe = corpus.train.front().image;
  const int grid = static_cast<int>(std::lround(std::sqrt(static_cast<double>(params.image_dim()))));
  const PoolingOperator pool(probe.height(), probe.width(), probe.channels(), grid);

  RawBatch train;
  for (const ToyExample& ex : corpus.train) train.push_back(ToRawItem(ex, pool));

  auto snapshot = [&](int epoch) {
    TracePoint p;
    p.epoch = epoch;
    p.loss = FullLoss(train, params, options.weights) / train.size();
    p.retrieval_acc = RetrievalAccuracy(params, corpus.heldout, pool);
    if (!std::isfinite(p.loss)) {
      throw Error(ErrorCode::kDivergenceDetected,
                  "loss became non-finite at epoch " + std::to_string(epoch));
    }
    return p;
  };

  std::vector<TracePoint> trace = {snapshot(0)};
  std::vector<size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> flat = params.Flatten();
  for (int epoch = 1; epoch <= options.epochs; ++epoch) {
    rng.Shuffle(std::span<size_t>(order));
    for (size_t start = 0; start < order.size(); start += options.batch_size) {
      RawBatch batch;
      for (size_t k = start; k < std::min(order.size(), start + options.batch_size); ++k) {
        batch.push_back(train[order[k]]);
      }
      FullGradient g;
      try {
        g = GradFull(batch, params, options.weights);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kNonFiniteGradient) throw;
        throw Error(ErrorCode::kDivergenceDetected,
                    "gradient became non-finite at epoch " + std::to_string(epoch));
      }
      const std::vector<double> grad = g.FlatParams();
      const double scale = options.learning_rate / batch.size();
      for (size_t i = 0; i < flat.size(); ++i) flat[i] -= scale * grad[i];
      params.Unflatten(flat);
    }
    trace.push_back(snapshot(epoch));
  }
  return trace;
}

std::string FormatTraceCsv(const std::vector<TracePoint>& trace) {
  std::string out = "epoch,loss,retrieval_acc\n";
  for (const TracePoint& p : trace) {
    out += std::to_string(p.epoch) + "," + FormatDouble(p.loss) + "," +
           FormatDouble(p.retrieval_acc) + "\n";
  }
  return out;
}

}  // namespace pathobench::losses
