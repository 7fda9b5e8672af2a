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

#include "pathobench/losses/gradient.h"

#include <cmath>
#include <string>

#include "pathobench/core/error.h"

namespace pathobench::losses {

namespace {

template <typename T>
bool AllOrNone(const RawBatch& batch, std::optional<T> RawItem::*field,
               const char* what) {
  size_t present = 0;
  for (const RawItem& item : batch) present += (item.*field).has_value();
  if (present != 0 && present != batch.size()) {
    throw Error(ErrorCode::kMissingComponent,
                std::string(what) + " present on " + std::to_string(present) +
                    " of " + std::to_string(batch.size()) + " items");
  }
  return present != 0;
}

bool Finite(const Vector& v) { return v.allFinite(); }

}  // namespace

EmbeddingBatch Encode(const ToyEncoderParams& params, const RawBatch& batch) {
  EmbeddingBatch b;
  const bool nt = AllOrNone(batch, &RawItem::neg_text, "negative text");
  const bool ie = AllOrNone(batch, &RawItem::easy_neg_image, "easy negative image");
  const bool ih = AllOrNone(batch, &RawItem::hard_neg_image, "hard negative image");
  const bool pt = AllOrNone(batch, &RawItem::pos_text, "positive texts");
  const bool pi = AllOrNone(batch, &RawItem::pos_image, "positive image");
  for (const RawItem& item : batch) {
    b.text.push_back(params.EncodeText(item.text));
    b.image.push_back(params.EncodeImage(item.image));
    if (nt) b.neg_text.push_back(params.EncodeText(*item.neg_text));
    if (ie) b.easy_neg_image.push_back(params.EncodeImage(*item.easy_neg_image));
    if (ih) b.hard_neg_image.push_back(params.EncodeImage(*item.hard_neg_image));
    if (pt) {
      std::array<Vector, 4> four;
      for (size_t k = 0; k < 4; ++k) four[k] = params.EncodeText((*item.pos_text)[k]);
      b.pos_text.push_back(std::move(four));
    }
    if (pi) b.pos_image.push_back(params.EncodeImage(*item.pos_image));
  }
  return b;
}

double FullLoss(const RawBatch& batch, const ToyEncoderParams& params,
                const LossWeights& weights) {
  return LossFull(Encode(params, batch), params.temperature(), weights);
}

std::vector<double> FullGradient::FlatParams() const {
  ToyEncoderParams shaped;
  shaped.text_proj = d_text_proj;
  shaped.img_proj = d_img_proj;
  shaped.log_temperature = d_log_temperature;
  return shaped.Flatten();
}

FullGradient GradFull(const RawBatch& batch, const ToyEncoderParams& params,
                      const LossWeights& weights, bool input_grads) {
  const EmbeddingBatch enc = Encode(params, batch);
  const double tau = params.temperature();
  const EmbeddingGradient eg = LossFullGradient(enc, tau, weights);

  FullGradient g;
  g.loss = eg.loss;
  g.d_text_proj = Matrix::Zero(params.text_proj.rows(), params.text_proj.cols());
  g.d_img_proj = Matrix::Zero(params.img_proj.rows(), params.img_proj.cols());
  g.d_log_temperature = tau * eg.d_temperature;

  // f = P^T x  =>  dL/dP += x g^T,  dL/dx = P g.
  auto text = [&](const Vector& x, const Vector& dy) {
    g.d_text_proj.noalias() += x * dy.transpose();
    return Vector(params.text_proj * dy);
  };
  auto image = [&](const Vector& x, const Vector& dy) {
    g.d_img_proj.noalias() += x * dy.transpose();
    return Vector(params.img_proj * dy);
  };

  const auto& d = eg.d;
  for (size_t i = 0; i < batch.size(); ++i) {
    const RawItem& item = batch[i];
    RawItem di;
    di.text = text(item.text, d.text[i]);
    di.image = image(item.image, d.image[i]);
    if (!d.neg_text.empty()) di.neg_text = text(*item.neg_text, d.neg_text[i]);
    if (!d.easy_neg_image.empty())
      di.easy_neg_image = image(*item.easy_neg_image, d.easy_neg_image[i]);
    if (!d.hard_neg_image.empty())
      di.hard_neg_image = image(*item.hard_neg_image, d.hard_neg_image[i]);
    if (!d.pos_text.empty()) {
      std::array<Vector, 4> four;
      for (size_t k = 0; k < 4; ++k) four[k] = text((*item.pos_text)[k], d.pos_text[i][k]);
      di.pos_text = std::move(four);
    }
    if (!d.pos_image.empty()) di.pos_image = image(*item.pos_image, d.pos_image[i]);
    if (input_grads) g.d_inputs.push_back(std::move(di));
  }

  bool finite = std::isfinite(g.loss) && std::isfinite(g.d_log_temperature) &&
                g.d_text_proj.allFinite() && g.d_img_proj.allFinite();
  for (const RawItem& di : g.d_inputs) {
    finite = finite && Finite(di.text) && Finite(di.image);
    for (const auto* v : {&di.neg_text, &di.easy_neg_image, &di.hard_neg_image, &di.pos_image}) {
      finite = finite && (!v->has_value() || Finite(**v));
    }
    if (di.pos_text) {
      for (const Vector& v : *di.pos_text) finite = finite && Finite(v);
    }
  }
  if (!finite) throw Error(ErrorCode::kNonFiniteGradient, "non-finite loss gradient");
  return g;
}

}  // namespace pathobench::losses
