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

#include "pathobench/losses/losses.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "pathobench/core/error.h"

namespace pathobench::losses {

namespace {

// Every loss term has the form -log(sum_num exp(l) / sum_den exp(l)) with
// l = temperature * cos(a, b). The engine evaluates such terms over a table
// of embedding nodes and, when asked, accumulates gradients per node.
class TermEngine {
 public:
  using Pair = std::pair<size_t, size_t>;

  TermEngine(const EmbeddingBatch& b, double temperature, bool want_grad)
      : b_(b), temperature_(temperature), want_grad_(want_grad) {
    const size_t n = b.size();
    text_ = AddGroup(b.text);
    image_ = AddGroup(b.image);
    neg_text_ = AddGroup(b.neg_text);
    easy_ = AddGroup(b.easy_neg_image);
    hard_ = AddGroup(b.hard_neg_image);
    pos_image_ = AddGroup(b.pos_image);
    pos_text_ = nodes_.size();
    for (const auto& four : b.pos_text) {
      for (const Vector& v : four) nodes_.push_back(&v);
    }
    if (b.image.size() != n) {
      throw Error(ErrorCode::kLengthMismatch, "text and image counts differ");
    }
    if (want_grad_) {
      grads_.reserve(nodes_.size());
      for (const Vector* v : nodes_) grads_.push_back(Vector::Zero(v->size()));
    }
  }

  size_t T(size_t i) const { return text_ + i; }
  size_t I(size_t i) const { return image_ + i; }
  size_t TN(size_t i) const { return neg_text_ + i; }
  size_t IE(size_t i) const { return easy_ + i; }
  size_t IH(size_t i) const { return hard_ + i; }
  size_t IP(size_t i) const { return pos_image_ + i; }
  size_t TP(size_t i, size_t k) const { return pos_text_ + 4 * i + k; }

  void AddTerm(const std::vector<Pair>& num, const std::vector<Pair>& den,
               double weight) {
    std::vector<double> cn, cd;
    for (const Pair& p : num) cn.push_back(Cos(p));
    for (const Pair& p : den) cd.push_back(Cos(p));
    std::vector<double> pn, pd;
    const double lse_num = LogSumExp(cn, &pn);
    const double lse_den = LogSumExp(cd, &pd);
    loss_ += weight * (lse_den - lse_num);
    if (!want_grad_) return;
    for (size_t q = 0; q < den.size(); ++q) Backward(den[q], cd[q], weight * pd[q]);
    for (size_t q = 0; q < num.size(); ++q) Backward(num[q], cn[q], -weight * pn[q]);
  }

  double loss() const { return loss_; }
  double d_temperature() const { return d_temperature_; }

  EmbeddingBatch Gradients() const {
    EmbeddingBatch d;
    auto take = [&](size_t base, size_t count, std::vector<Vector>& out) {
      for (size_t i = 0; i < count; ++i) out.push_back(grads_[base + i]);
    };
    take(text_, b_.text.size(), d.text);
    take(image_, b_.image.size(), d.image);
    take(neg_text_, b_.neg_text.size(), d.neg_text);
    take(easy_, b_.easy_neg_image.size(), d.easy_neg_image);
    take(hard_, b_.hard_neg_image.size(), d.hard_neg_image);
    take(pos_image_, b_.pos_image.size(), d.pos_image);
    for (size_t i = 0; i < b_.pos_text.size(); ++i) {
      std::array<Vector, 4> four;
      for (size_t k = 0; k < 4; ++k) four[k] = grads_[TP(i, k)];
      d.pos_text.push_back(std::move(four));
    }
    return d;
  }

 private:
  size_t AddGroup(const std::vector<Vector>& group) {
    const size_t base = nodes_.size();
    for (const Vector& v : group) nodes_.push_back(&v);
    return base;
  }

  double Cos(const Pair& p) const { return Cosine(*nodes_[p.first], *nodes_[p.second]); }

  // Returns log(sum exp(temperature * c)) and the softmax weights.
  double LogSumExp(const std::vector<double>& c, std::vector<double>* probs) const {
    double m = -HUGE_VAL;
    for (double x : c) m = std::max(m, temperature_ * x);
    double s = 0.0;
    probs->resize(c.size());
    for (size_t q = 0; q < c.size(); ++q) {
      (*probs)[q] = std::exp(temperature_ * c[q] - m);
      s += (*probs)[q];
    }
    for (double& p : *probs) p /= s;
    return m + std::log(s);
  }

  // dL/dl = g for the logit of pair p with cosine c.
  void Backward(const Pair& p, double c, double g) {
    d_temperature_ += g * c;
    const double dc = g * temperature_;
    const Vector& a = *nodes_[p.first];
    const Vector& b = *nodes_[p.second];
    const double na = a.norm();
    const double nb = b.norm();
    grads_[p.first] += dc * (b / (na * nb) - c * a / (na * na));
    grads_[p.second] += dc * (a / (na * nb) - c * b / (nb * nb));
  }

  const EmbeddingBatch& b_;
  double temperature_;
  bool want_grad_;
  std::vector<const Vector*> nodes_;
  std::vector<Vector> grads_;
  size_t text_ = 0, image_ = 0, neg_text_ = 0, easy_ = 0, hard_ = 0,
         pos_image_ = 0, pos_text_ = 0;
  double loss_ = 0.0;
  double d_temperature_ = 0.0;
};

template <typename T>
void Require(const std::vector<T>& v, size_t n, const char* what) {
  if (v.size() != n) {
    throw Error(ErrorCode::kMissingComponent,
                std::string(what) + " missing for " +
                    std::to_string(n - std::min(n, v.size())) + " of " +
                    std::to_string(n) + " items");
  }
}

void AddContrastive(TermEngine& e, size_t n, double w) {
  for (size_t i = 0; i < n; ++i) {
    std::vector<TermEngine::Pair> row, col;
    for (size_t j = 0; j < n; ++j) {
      row.push_back({e.T(i), e.I(j)});
      col.push_back({e.T(j), e.I(i)});
    }
    e.AddTerm({{e.T(i), e.I(i)}}, row, w);
    e.AddTerm({{e.T(i), e.I(i)}}, col, w);
  }
}

void AddNegativeText(TermEngine& e, const EmbeddingBatch& b, double w) {
  Require(b.neg_text, b.size(), "negative text");
  for (size_t i = 0; i < b.size(); ++i) {
    e.AddTerm({{e.T(i), e.I(i)}}, {{e.T(i), e.I(i)}, {e.TN(i), e.I(i)}}, w);
  }
}

void AddNegativeEasyImage(TermEngine& e, const EmbeddingBatch& b, double w) {
  Require(b.easy_neg_image, b.size(), "easy negative image");
  for (size_t i = 0; i < b.size(); ++i) {
    e.AddTerm({{e.T(i), e.I(i)}}, {{e.T(i), e.I(i)}, {e.T(i), e.IE(i)}}, w);
  }
}

void AddNegativeHardImage(TermEngine& e, const EmbeddingBatch& b, double w) {
  Require(b.hard_neg_image, b.size(), "hard negative image");
  for (size_t i = 0; i < b.size(); ++i) {
    e.AddTerm({{e.T(i), e.I(i)}}, {{e.T(i), e.I(i)}, {e.T(i), e.IH(i)}}, w);
  }
}

void AddPositiveTextText(TermEngine& e, const EmbeddingBatch& b, double w) {
  Require(b.pos_text, b.size(), "positive texts");
  for (size_t i = 0; i < b.size(); ++i) {
    std::vector<TermEngine::Pair> num, den;
    for (size_t k = 0; k < 4; ++k) num.push_back({e.TP(i, k), e.T(i)});
    for (size_t j = 0; j < b.size(); ++j)
      for (size_t k = 0; k < 4; ++k) den.push_back({e.TP(i, k), e.T(j)});
    e.AddTerm(num, den, w);
  }
}

void AddPositiveTextImage(TermEngine& e, const EmbeddingBatch& b, double w) {
  Require(b.pos_text, b.size(), "positive texts");
  for (size_t i = 0; i < b.size(); ++i) {
    std::vector<TermEngine::Pair> num, den;
    for (size_t k = 0; k < 4; ++k) num.push_back({e.TP(i, k), e.I(i)});
    for (size_t j = 0; j < b.size(); ++j)
      for (size_t k = 0; k < 4; ++k) den.push_back({e.TP(i, k), e.I(j)});
    e.AddTerm(num, den, w);
  }
}

void AddPositiveImage(TermEngine& e, const EmbeddingBatch& b, double w) {
  Require(b.pos_image, b.size(), "positive image");
  for (size_t i = 0; i < b.size(); ++i) {
    std::vector<TermEngine::Pair> den;
    for (size_t j = 0; j < b.size(); ++j) den.push_back({e.T(j), e.IP(i)});
    e.AddTerm({{e.T(i), e.IP(i)}}, den, w);
  }
}

void AddFull(TermEngine& e, const EmbeddingBatch& b, const LossWeights& w) {
  if (w.w_neg < 0 || w.w_pos < 0) {
    throw Error(ErrorCode::kInvalidArgument, "loss weights must be non-negative");
  }
  AddContrastive(e, b.size(), 1.0);
  if (w.w_neg != 0) {
    AddNegativeText(e, b, w.w_neg);
    AddNegativeEasyImage(e, b, w.w_neg);
    AddNegativeHardImage(e, b, w.w_neg);
  }
  if (w.w_pos != 0) {
    AddPositiveTextText(e, b, w.w_pos);
    AddPositiveTextImage(e, b, w.w_pos);
    AddPositiveImage(e, b, w.w_pos);
  }
}

template <typename Fn>
double Evaluate(const EmbeddingBatch& b, double temperature, Fn fn) {
  TermEngine e(b, temperature, false);
  fn(e);
  return e.loss();
}

}  // namespace

double Cosine(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "cosine of vectors of different size");
  }
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw Error(ErrorCode::kZeroVector, "zero vector in cosine");
  return a.dot(b) / (na * nb);
}

double Similarity(const Vector& t, const Vector& i, double temperature) {
  return std::exp(temperature * Cosine(t, i));
}

double LossContrastive(const EmbeddingBatch& b, double temperature) {
  return Evaluate(b, temperature, [&](TermEngine& e) { AddContrastive(e, b.size(), 1.0); });
}

double LossNegativeText(const EmbeddingBatch& b, double temperature) {
  return Evaluate(b, temperature, [&](TermEngine& e) { AddNegativeText(e, b, 1.0); });
}

double LossNegativeEasyImage(const EmbeddingBatch& b, double temperature) {
  return Evaluate(b, temperature, [&](TermEngine& e) { AddNegativeEasyImage(e, b, 1.0); });
}

double LossNegativeHardImage(const EmbeddingBatch& b, double temperature) {
  return Evaluate(b, temperature, [&](TermEngine& e) { AddNegativeHardImage(e, b, 1.0); });
}

double LossNegativeTotal(const EmbeddingBatch& b, double temperature) {
  return LossNegativeText(b, temperature) + LossNegativeEasyImage(b, temperature) +
         LossNegativeHardImage(b, temperature);
}

double LossPositiveTextText(const EmbeddingBatch& b, double temperature) {
  return Evaluate(b, temperature, [&](TermEngine& e) { AddPositiveTextText(e, b, 1.0); });
}

double LossPositiveTextImage(const EmbeddingBatch& b, double temperature) {
  return Evaluate(b, temperature, [&](TermEngine& e) { AddPositiveTextImage(e, b, 1.0); });
}

double LossPositiveImage(const EmbeddingBatch& b, double temperature) {
  return Evaluate(b, temperature, [&](TermEngine& e) { AddPositiveImage(e, b, 1.0); });
}

double LossPositiveTotal(const EmbeddingBatch& b, double temperature) {
  return LossPositiveTextText(b, temperature) + LossPositiveTextImage(b, temperature) +
         LossPositiveImage(b, temperature);
}

double LossFull(const EmbeddingBatch& b, double temperature,
                const LossWeights& weights) {
  double loss = LossContrastive(b, temperature);
  if (weights.w_neg < 0 || weights.w_pos < 0) {
    throw Error(ErrorCode::kInvalidArgument, "loss weights must be non-negative");
  }
  if (weights.w_neg != 0) loss += weights.w_neg * LossNegativeTotal(b, temperature);
  if (weights.w_pos != 0) loss += weights.w_pos * LossPositiveTotal(b, temperature);
  return loss;
}

EmbeddingGradient LossFullGradient(const EmbeddingBatch& b, double temperature,
                                   const LossWeights& weights) {
  TermEngine e(b, temperature, true);
  AddFull(e, b, weights);
  EmbeddingGradient g;
  g.loss = e.loss();
  g.d = e.Gradients();
  g.d_temperature = e.d_temperature();
  return g;
}

}  // namespace pathobench::losses
