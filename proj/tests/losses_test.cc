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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include <gtest/gtest.h>

#include "pathobench/core/error.h"
#include "pathobench/core/rng.h"
#include "pathobench/losses/encoder.h"
#include "pathobench/losses/gradient.h"
#include "pathobench/losses/losses.h"
#include "pathobench/losses/train.h"

namespace pathobench::losses {
namespace {

const double kLn2 = std::log(2.0);

Vector Gaussian(size_t n, Rng& rng) {
  Vector v(n);
  for (size_t i = 0; i < n; ++i) {
    // Box-Muller; fine for test data.
    const double u1 = std::max(rng.Uniform(), 1e-300), u2 = rng.Uniform();
    v[i] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }
  return v;
}

EmbeddingBatch RandomBatch(size_t b, size_t d, Rng& rng, bool companions = true) {
  EmbeddingBatch e;
  for (size_t i = 0; i < b; ++i) {
    e.text.push_back(Gaussian(d, rng));
    e.image.push_back(Gaussian(d, rng));
    if (!companions) continue;
    e.neg_text.push_back(Gaussian(d, rng));
    e.easy_neg_image.push_back(Gaussian(d, rng));
    e.hard_neg_image.push_back(Gaussian(d, rng));
    e.pos_text.push_back({Gaussian(d, rng), Gaussian(d, rng), Gaussian(d, rng), Gaussian(d, rng)});
    e.pos_image.push_back(Gaussian(d, rng));
  }
  return e;
}

// Every vector the same, so every similarity ties.
EmbeddingBatch TiedBatch(size_t b) {
  Vector v = Vector::Ones(4);
  EmbeddingBatch e;
  for (size_t i = 0; i < b; ++i) {
    e.text.push_back(v);
    e.image.push_back(v);
    e.neg_text.push_back(v);
    e.easy_neg_image.push_back(v);
    e.hard_neg_image.push_back(v);
    e.pos_text.push_back({v, v, v, v});
    e.pos_image.push_back(v);
  }
  return e;
}

RawBatch RandomRawBatch(size_t b, size_t text_dim, size_t image_dim, Rng& rng) {
  RawBatch batch;
  for (size_t i = 0; i < b; ++i) {
    RawItem it;
    it.text = Gaussian(text_dim, rng);
    it.image = Gaussian(image_dim, rng);
    it.neg_text = Gaussian(text_dim, rng);
    it.easy_neg_image = Gaussian(image_dim, rng);
    it.hard_neg_image = Gaussian(image_dim, rng);
    it.pos_text = std::array<Vector, 4>{Gaussian(text_dim, rng), Gaussian(text_dim, rng),
                                        Gaussian(text_dim, rng), Gaussian(text_dim, rng)};
    it.pos_image = Gaussian(image_dim, rng);
    batch.push_back(std::move(it));
  }
  return batch;
}

double RelErr(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0});
}

TEST(SimilarityTest, Examples) {
  Vector a(2), b(2);
  a << 1, 0;
  EXPECT_NEAR(Similarity(a, a, 1.0), std::exp(1.0), 1e-15);
  b << 0, 1;
  EXPECT_DOUBLE_EQ(Similarity(a, b, 7.0), 1.0);
  b << 0.6, 0.8;
  EXPECT_NEAR(Similarity(a, b, 1.0), 1.8221188003905089, 1e-12);
}

TEST(SimilarityTest, ScaleInvariantAndPositive) {
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const Vector a = Gaussian(5, rng), b = Gaussian(5, rng);
    const double s = Similarity(a, b, 50.0);
    EXPECT_GT(s, 0.0);
    EXPECT_NEAR(Similarity(3.5 * a, 0.25 * b, 50.0), s, 1e-9 * s);
  }
}

TEST(SimilarityTest, ZeroVector) {
  Vector z = Vector::Zero(3), a = Vector::Ones(3);
  try {
    Similarity(z, a, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroVector);
  }
}

TEST(LossTest, BatchOfOneIsZero) {
  Rng rng(1);
  const auto b = RandomBatch(1, 6, rng);
  EXPECT_EQ(LossContrastive(b, 50.0), 0.0);
  EXPECT_EQ(LossPositiveTextText(b, 50.0), 0.0);
  EXPECT_EQ(LossPositiveTextImage(b, 50.0), 0.0);
  EXPECT_EQ(LossPositiveImage(b, 50.0), 0.0);
}

TEST(LossTest, TiedScores) {
  const auto b2 = TiedBatch(2);
  EXPECT_NEAR(LossContrastive(b2, 1.0), 4 * kLn2, 1e-12);
  EXPECT_NEAR(LossPositiveTextText(b2, 1.0), 2 * kLn2, 1e-12);
  EXPECT_NEAR(LossPositiveImage(b2, 1.0), 2 * kLn2, 1e-12);
  for (size_t bs : {1u, 3u, 5u}) {
    const auto b = TiedBatch(bs);
    EXPECT_NEAR(LossNegativeText(b, 50.0), bs * kLn2, 1e-12);
    EXPECT_NEAR(LossNegativeTotal(b, 50.0), 3 * bs * kLn2, 1e-12);
    EXPECT_NEAR(LossPositiveTextImage(b, 50.0), bs * std::log(double(bs)), 1e-12);
  }
}

TEST(LossTest, NegativeTextAtThreeToOne) {
  // cos(T,I) = 1 and cos(T^N,I) = 1 - ln 3 at temperature 1.
  Vector t(2), n(2);
  t << 1, 0;
  const double c = 1.0 - std::log(3.0);
  n << c, std::sqrt(1 - c * c);
  EmbeddingBatch b;
  b.text = {t};
  b.image = {t};
  b.neg_text = {n};
  EXPECT_NEAR(Similarity(t, t, 1.0), 3 * Similarity(n, t, 1.0), 1e-12);
  EXPECT_NEAR(LossNegativeText(b, 1.0), -std::log(0.75), 1e-12);
}

TEST(LossTest, NegativeTotalIsSumOfParts) {
  Rng rng(9);
  const auto b = RandomBatch(6, 5, rng);
  EXPECT_NEAR(LossNegativeTotal(b, 3.0),
              LossNegativeText(b, 3.0) + LossNegativeEasyImage(b, 3.0) + LossNegativeHardImage(b, 3.0),
              1e-12);
  EXPECT_NEAR(LossPositiveTotal(b, 3.0),
              LossPositiveTextText(b, 3.0) + LossPositiveTextImage(b, 3.0) + LossPositiveImage(b, 3.0),
              1e-12);
}

TEST(LossTest, MissingImageNegatives) {
  auto b = TiedBatch(2);
  b.easy_neg_image.clear();
  try {
    LossNegativeTotal(b, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingComponent);
  }
}

TEST(LossTest, FullLossIsAffineInWeights) {
  Rng rng(21);
  for (int t = 0; t < 10; ++t) {
    const auto b = RandomBatch(4, 6, rng);
    const double tau = 2.0;
    const double con = LossContrastive(b, tau);
    EXPECT_EQ(LossFull(b, tau, {0.0, 0.0}), con);
    const double neg = LossNegativeTotal(b, tau), pos = LossPositiveTotal(b, tau);
    EXPECT_NEAR(LossFull(b, tau, {2.0, 1.0}) - LossFull(b, tau, {1.0, 1.0}), neg, 1e-12);
    EXPECT_NEAR(LossFull(b, tau, {1.0, 2.0}) - LossFull(b, tau, {1.0, 1.0}), pos, 1e-12);
  }
  const auto tied = TiedBatch(3);
  EXPECT_NEAR(LossFull(tied, 1.0, {1.0, 0.0}), LossContrastive(tied, 1.0) + 3 * kLn2 * 3, 1e-12);
}

TEST(LossTest, ZeroWeightSkipsMissingCompanions) {
  Rng rng(2);
  const auto b = RandomBatch(3, 4, rng, /*companions=*/false);
  EXPECT_EQ(LossFull(b, 5.0, {0.0, 0.0}), LossContrastive(b, 5.0));
}

TEST(LossTest, PermutationInvariant) {
  Rng rng(4);
  const auto b = RandomBatch(5, 4, rng);
  EmbeddingBatch p;
  const std::vector<size_t> perm = {3, 0, 4, 1, 2};
  for (size_t i : perm) {
    p.text.push_back(b.text[i]);
    p.image.push_back(b.image[i]);
    p.neg_text.push_back(b.neg_text[i]);
    p.easy_neg_image.push_back(b.easy_neg_image[i]);
    p.hard_neg_image.push_back(b.hard_neg_image[i]);
    p.pos_text.push_back(b.pos_text[i]);
    p.pos_image.push_back(b.pos_image[i]);
  }
  EXPECT_NEAR(LossFull(b, 4.0, {}), LossFull(p, 4.0, {}), 1e-10);
}

TEST(LossTest, PositiveTextImageIgnoresEmbeddingScale) {
  auto b = TiedBatch(3);
  Rng rng(5);
  for (auto& i : b.image) i = Gaussian(4, rng);
  const double base = LossPositiveTextImage(b, 1.0);
  for (auto& p : b.pos_text) p = {2 * p[0], 2 * p[1], 2 * p[2], 2 * p[3]};
  EXPECT_NEAR(LossPositiveTextImage(b, 1.0), base, 1e-12);
}

TEST(LossTest, StrongerPositiveLowersTextTextLoss) {
  Rng rng(6);
  auto b = RandomBatch(3, 4, rng);
  const double before = LossPositiveTextText(b, 1.0);
  b.pos_text[0][0] = b.text[0];
  EXPECT_LT(LossPositiveTextText(b, 1.0), before);
}

TEST(LossTest, SeparatedBatchApproachesZero) {
  EmbeddingBatch b;
  for (int i = 0; i < 3; ++i) {
    Vector v = Vector::Zero(3);
    v[i] = 1;
    b.text.push_back(v);
    b.image.push_back(v);
  }
  EXPECT_LT(LossContrastive(b, 50.0), 1e-20);
}

TEST(GradientTest, EmbeddingGradientMatchesFiniteDifferences) {
  Rng rng(13);
  const auto b = RandomBatch(4, 5, rng);
  const double tau = 2.5;
  const auto g = LossFullGradient(b, tau, {});
  const double h = 1e-6;
  EXPECT_LT(RelErr(g.d_temperature,
                   (LossFull(b, tau + h, {}) - LossFull(b, tau - h, {})) / (2 * h)),
            1e-6);
  for (size_t i = 0; i < b.size(); ++i) {
    for (int k = 0; k < 5; ++k) {
      auto p = b, m = b;
      p.image[i][k] += h;
      m.image[i][k] -= h;
      EXPECT_LT(RelErr(g.d.image[i][k], (LossFull(p, tau, {}) - LossFull(m, tau, {})) / (2 * h)), 1e-6);
      p = b;
      m = b;
      p.pos_text[i][2][k] += h;
      m.pos_text[i][2][k] -= h;
      EXPECT_LT(RelErr(g.d.pos_text[i][2][k], (LossFull(p, tau, {}) - LossFull(m, tau, {})) / (2 * h)),
                1e-6);
    }
  }
}

TEST(GradientTest, ParamsMatchFiniteDifferences) {
  Rng rng(77);
  for (int trial = 0; trial < 3; ++trial) {
    auto params = ToyEncoderParams::Random(12, 16, 6, rng);
    const RawBatch batch = RandomRawBatch(8, 12, 16, rng);
    const LossWeights w{0.7, 1.3};
    const auto g = GradFull(batch, params, w);
    const auto analytic = g.FlatParams();
    const auto flat = params.Flatten();
    ASSERT_EQ(analytic.size(), flat.size());
    const double h = 1e-5;
    for (size_t i = 0; i < flat.size(); ++i) {
      auto f = flat;
      f[i] += h;
      ToyEncoderParams q = params;
      q.Unflatten(f);
      const double lp = FullLoss(batch, q, w);
      f[i] -= 2 * h;
      q.Unflatten(f);
      const double lm = FullLoss(batch, q, w);
      EXPECT_LT(RelErr(analytic[i], (lp - lm) / (2 * h)), 1e-4) << "coordinate " << i;
    }
    EXPECT_NEAR(g.loss, FullLoss(batch, params, w), 1e-12 * std::abs(g.loss));
  }
}

TEST(GradientTest, InputGradientsMatchFiniteDifferences) {
  Rng rng(8);
  auto params = ToyEncoderParams::Random(6, 10, 4, rng);
  const RawBatch batch = RandomRawBatch(3, 6, 10, rng);
  const auto g = GradFull(batch, params, {}, /*input_grads=*/true);
  ASSERT_EQ(g.d_inputs.size(), batch.size());
  const double h = 1e-5;
  for (size_t i = 0; i < batch.size(); ++i) {
    for (int k = 0; k < 10; ++k) {
      auto p = batch, m = batch;
      (*p[i].hard_neg_image)[k] += h;
      (*m[i].hard_neg_image)[k] -= h;
      const double fd = (FullLoss(p, params, {}) - FullLoss(m, params, {})) / (2 * h);
      EXPECT_LT(RelErr((*g.d_inputs[i].hard_neg_image)[k], fd), 1e-4);
    }
  }
}

TEST(GradientTest, TemperatureGradientVanishesWhenTied) {
  const auto g = LossFullGradient(TiedBatch(4), 50.0, {});
  EXPECT_NEAR(g.d_temperature, 0.0, 1e-12);
}

TEST(GradientTest, ZeroWeightedPathHasZeroPixelGradient) {
  Rng rng(10);
  auto params = ToyEncoderParams::Random(6, 10, 4, rng);
  const RawBatch batch = RandomRawBatch(3, 6, 10, rng);
  const auto g = GradFull(batch, params, {0.0, 1.0}, true);
  for (const auto& item : g.d_inputs) {
    ASSERT_TRUE(item.hard_neg_image && item.easy_neg_image);
    EXPECT_EQ(item.hard_neg_image->cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(item.easy_neg_image->cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(EncoderTest, CheckpointRoundTrip) {
  Rng rng(1);
  const auto p = ToyEncoderParams::Random(5, 7, 3, rng);
  const std::string path = ::testing::TempDir() + "/params.bin";
  p.Save(path);
  const auto q = ToyEncoderParams::Load(path);
  EXPECT_EQ(p.Flatten(), q.Flatten());
  EXPECT_EQ(q.text_dim(), 5u);
  EXPECT_EQ(q.image_dim(), 7u);
  EXPECT_DOUBLE_EQ(p.temperature(), kDefaultTemperature);
  std::remove(path.c_str());
}

TEST(EncoderTest, PoolingBackwardIsTranspose) {
  PoolingOperator pool(8, 8, 3, 4);
  Rng rng(2);
  ImageTensor img(8, 8, 3);
  for (double& v : img.values()) v = rng.Uniform();
  const Vector pooled = pool.Pool(img);
  const Vector g = Gaussian(16, rng);
  const Vector back = pool.Backward(g);
  Eigen::Map<const Vector> x(img.values().data(), img.size());
  EXPECT_NEAR(g.dot(pooled), back.dot(x), 1e-10);
}

ToyCorpus SmallCorpus(uint64_t seed) {
  ToyCorpusOptions o;
  o.pairs = 60;
  o.heldout = 20;
  auto c = MakeSeparableCorpus(o, seed);
  for (auto& ex : c.train) ex.hard_neg_image = ex.easy_neg_image;
  return c;
}

TEST(TrainTest, ZeroLearningRateIsConstant) {
  auto corpus = SmallCorpus(1);
  Rng rng(1);
  auto params = ToyEncoderParams::Random(64, 64, 16, rng);
  TrainOptions o;
  o.epochs = 3;
  o.learning_rate = 0.0;
  const auto trace = TrainToy(corpus, params, o, rng);
  ASSERT_EQ(trace.size(), 4u);
  for (const auto& p : trace) {
    EXPECT_EQ(p.loss, trace[0].loss);
    EXPECT_EQ(p.retrieval_acc, trace[0].retrieval_acc);
  }
}

TEST(TrainTest, Deterministic) {
  auto corpus = SmallCorpus(2);
  TrainOptions o;
  o.epochs = 3;
  std::vector<std::vector<TracePoint>> runs;
  for (int r = 0; r < 2; ++r) {
    Rng rng(5);
    auto params = ToyEncoderParams::Random(64, 64, 16, rng);
    runs.push_back(TrainToy(corpus, params, o, rng));
  }
  ASSERT_EQ(runs[0].size(), runs[1].size());
  for (size_t i = 0; i < runs[0].size(); ++i) {
    EXPECT_EQ(runs[0][i].loss, runs[1][i].loss);
    EXPECT_EQ(runs[0][i].retrieval_acc, runs[1][i].retrieval_acc);
  }
}

TEST(TrainTest, SeparableCorpusImproves) {
  auto corpus = SmallCorpus(3);
  Rng rng(3);
  auto params = ToyEncoderParams::Random(64, 64, 16, rng);
  TrainOptions o;
  o.epochs = 10;
  const auto trace = TrainToy(corpus, params, o, rng);
  EXPECT_GT(trace.back().retrieval_acc, trace.front().retrieval_acc);
  EXPECT_LT(trace.back().loss, trace.front().loss);
  EXPECT_EQ(FormatTraceCsv(trace).rfind("epoch,loss,retrieval_acc\n0,", 0), 0u);
}

TEST(TrainTest, MissingHardNegatives) {
  ToyCorpusOptions o;
  o.pairs = 20;
  o.heldout = 4;
  auto corpus = MakeSeparableCorpus(o, 0);
  Rng rng(0);
  auto params = ToyEncoderParams::Random(64, 64, 8, rng);
  try {
    TrainToy(corpus, params, {}, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingComponent);
  }
}

}  // namespace
}  // namespace pathobench::losses
