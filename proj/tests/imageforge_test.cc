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

#include <cmath>

#include <gtest/gtest.h>

#include "pathobench/bench/toy_corpus.h"
#include "pathobench/core/config.h"
#include "pathobench/core/error.h"
#include "pathobench/core/rng.h"
#include "pathobench/imageforge/easy_negative.h"
#include "pathobench/imageforge/miner.h"
#include "pathobench/imageforge/morphology.h"
#include "pathobench/imageforge/refine.h"
#include "pathobench/imageforge/wavelet.h"
#include "pathobench/losses/train.h"
#include "pathobench/oracle/client.h"
#include "pathobench/oracle/embedding.h"
#include "pathobench/oracle/image_store.h"

namespace pathobench::imageforge {
namespace {

Plane RandomPlane(int h, int w, Rng& rng) {
  Plane p(h, w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) p(y, x) = rng.Uniform();
  return p;
}

ImageTensor RandomImage(int h, int w, int c, Rng& rng) {
  ImageTensor img(h, w, c);
  for (double& v : img.values()) v = rng.Uniform();
  return img;
}

double Energy(const Subbands& s) {
  double e = s.approx.squaredNorm();
  for (const auto& d : s.details) {
    e += d.horizontal.squaredNorm() + d.vertical.squaredNorm() + d.diagonal.squaredNorm();
  }
  return e;
}

TEST(WaveletTest, ConstantHasNoDetail) {
  const Plane c = Plane::Constant(16, 16, 0.37);
  const auto s = Dwt2(c, 3);
  ASSERT_EQ(s.details.size(), 3u);
  for (const auto& d : s.details) {
    EXPECT_EQ(d.horizontal.cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(d.vertical.cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(d.diagonal.cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(WaveletTest, RoundTripAndParseval) {
  Rng rng(1);
  for (int t = 0; t < 50; ++t) {
    const Plane x = RandomPlane(64, 64, rng);
    const auto s = Dwt2(x, 3);
    EXPECT_LT((Idwt2(s) - x).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_NEAR(Energy(s), x.squaredNorm(), 1e-9);
  }
}

TEST(WaveletTest, OddSizesRoundTrip) {
  Rng rng(2);
  for (auto [h, w] : {std::pair{7, 5}, {1, 9}, {13, 12}, {33, 31}}) {
    const Plane x = RandomPlane(h, w, rng);
    const Plane y = Idwt2(Dwt2(x, 2));
    ASSERT_EQ(y.rows(), h);
    ASSERT_EQ(y.cols(), w);
    EXPECT_LT((y - x).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(MorphologyTest, ConstantPlane) {
  const Plane c = Plane::Constant(9, 11, 0.6);
  for (int r : {1, 2}) {
    EXPECT_EQ(MorphTopHat(c, r).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(MorphBlackHat(c, r).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(MorphGradient(c, r).cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(MorphologyTest, TopHatRecoversIsolatedPeak) {
  Plane x = Plane::Zero(7, 7);
  x(3, 4) = 1.0;
  EXPECT_EQ(MorphTopHat(x, 1), x);
  EXPECT_EQ(Open(x, 1).cwiseAbs().maxCoeff(), 0.0);
}

TEST(MorphologyTest, HatsNonNegative) {
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const Plane x = RandomPlane(12, 10, rng) * 4.0 - Plane::Constant(12, 10, 2.0);
    EXPECT_GE(MorphTopHat(x, 1).minCoeff(), 0.0);
    EXPECT_GE(MorphBlackHat(x, 2).minCoeff(), 0.0);
    EXPECT_GE(MorphGradient(x, 1).minCoeff(), 0.0);
  }
}

TEST(MorphologyTest, EdgeReplication) {
  Plane x(1, 4);
  x << 5, 1, 2, 3;
  Plane e(1, 4);
  e << 1, 1, 1, 2;
  EXPECT_EQ(Erode(x, 1), e);
  Plane d(1, 4);
  d << 5, 5, 3, 3;
  EXPECT_EQ(Dilate(x, 1), d);
}

TEST(RefineTest, ZeroGainsIsIdentity) {
  Rng rng(4);
  const ImageTensor img = RandomImage(20, 18, 3, rng);
  const ImageTensor out = EnhanceImage(img, 2, 1, {0, 0, 0});
  EXPECT_LT(MaxAbsDifference(img, out), 1e-10);
}

TEST(RefineTest, OutputStaysInUnitRange) {
  Rng rng(5);
  const ImageTensor img = RandomImage(16, 16, 3, rng);
  const ImageTensor out = EnhanceImage(img, 2, 1, {4.0, 4.0, 4.0});
  for (double v : out.values()) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(RefineTest, ZeroTauAcceptsFirstAttempt) {
  auto client = oracle::OracleClient::Toy();
  Rng rng(6);
  WaveletMorphConfig cfg;
  cfg.tau = 0.0;
  cfg.gains = {50, 50, 50};
  const auto r = RefinePositiveImage(RandomImage(16, 16, 3, rng), cfg, *client);
  EXPECT_TRUE(r.accepted);
  EXPECT_EQ(r.attempts, 1);
  EXPECT_EQ(r.applied, cfg.gains);
}

TEST(RefineTest, DefaultConfigPassesTheGate) {
  auto client = oracle::OracleClient::Toy();
  for (uint64_t seed = 0; seed < 5; ++seed) {
    const ImageTensor img = client->GenerateImage("cribriform glands in dense stroma", seed, 32, 32, 3);
    WaveletMorphConfig cfg;
    const auto r = RefinePositiveImage(img, cfg, *client);
    EXPECT_TRUE(r.accepted);
    EXPECT_LE(r.attempts, cfg.max_retries + 1);
    EXPECT_GE(r.similarity, cfg.tau);
    EXPECT_GT(MaxAbsDifference(img, r.image), 0.0);
  }
}

TEST(RefineTest, UnreachableGateReturnsOriginal) {
  auto client = oracle::OracleClient::Toy();
  const ImageTensor img = client->GenerateImage("nests of atypical cells", 1, 16, 16, 3);
  WaveletMorphConfig cfg;
  cfg.tau = 1.0;
  EXPECT_THROW(cfg.Validate(), Error);
  cfg.tau = 0.999999;
  cfg.gains = {8, 8, 8};
  cfg.max_retries = 1;
  const auto r = RefinePositiveImage(img, cfg, *client);
  ASSERT_FALSE(r.accepted);
  EXPECT_EQ(r.attempts, 2);
  EXPECT_EQ(r.image, img);
  EXPECT_EQ(r.applied, (Gains{0, 0, 0}));
}

TEST(RefineTest, ConfigKeys) {
  const auto cfg = WaveletMorphConfig::FromConfig(
      KeyValueConfig::Parse("[refine]\nlevels = 3\ntau = 0.8\n"));
  EXPECT_EQ(cfg.levels, 3);
  EXPECT_DOUBLE_EQ(cfg.tau, 0.8);
  EXPECT_THROW(WaveletMorphConfig::FromConfig(KeyValueConfig::Parse("[refine]\nlevles = 3\n")),
               Error);
}

// Params whose image side is the identity on an 8x8 gray image.
losses::ToyEncoderParams IdentityImageParams() {
  Rng rng(0);
  auto p = losses::ToyEncoderParams::Random(4, 64, 64, rng);
  p.img_proj = losses::Matrix::Identity(64, 64);
  return p;
}

TEST(FeatureDistanceTest, HandValues) {
  const auto params = IdentityImageParams();
  ImageTensor zero(8, 8, 1), one(8, 8, 1), three(8, 8, 1);
  one.at(2, 2, 0) = 1.0;
  three.at(0, 0, 0) = three.at(1, 1, 0) = three.at(7, 7, 0) = 1.0;
  EXPECT_DOUBLE_EQ(FeatureDistance({one, three}, {zero, zero}, params), 2.0);
  EXPECT_DOUBLE_EQ(FeatureDistance({three, one}, {zero, zero}, params), 2.0);
  EXPECT_EQ(FeatureDistance({one, three}, {one, three}, params), 0.0);
  EXPECT_DOUBLE_EQ(FeatureDistance({zero, zero}, {one, three}, params), 2.0);
}

TEST(FeatureDistanceTest, LengthMismatch) {
  const auto params = IdentityImageParams();
  ImageTensor z(8, 8, 1);
  try {
    FeatureDistance({z}, {z, z}, params);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLengthMismatch);
  }
}

struct MinerFixture {
  losses::ToyCorpus corpus;
  losses::ToyEncoderParams params;
};

MinerFixture MakeMinerFixture(uint64_t seed) {
  losses::ToyCorpusOptions o;
  o.pairs = 20;
  o.heldout = 4;
  Rng rng(seed);
  return {losses::MakeSeparableCorpus(o, seed), losses::ToyEncoderParams::Random(64, 64, 64, rng)};
}

TEST(MinerTest, ZeroIterationsIsNoOp) {
  const auto f = MakeMinerFixture(0);
  MinerConfig cfg;
  cfg.max_iters = 0;
  const auto& ex = f.corpus.train[0];
  const auto r = MineHardNegative(ex.image, ex.text, f.params, cfg);
  EXPECT_EQ(r.image, ex.image);
  EXPECT_TRUE(r.trace.empty());
  EXPECT_EQ(FeatureDistance({r.image}, {ex.image}, f.params), 0.0);
}

TEST(MinerTest, HugePenaltyStaysPut) {
  for (uint64_t seed = 0; seed < 5; ++seed) {
    const auto f = MakeMinerFixture(seed);
    MinerConfig cfg;
    cfg.lambda = 1e6;
    cfg.step_size = 1.0;
    const auto& ex = f.corpus.train[0];
    const auto r = MineHardNegative(ex.image, ex.text, f.params, cfg);
    EXPECT_LE(MaxAbsDifference(r.image, ex.image), cfg.stop_tolerance);
  }
}

TEST(MinerTest, AscentPropertiesAcrossSeeds) {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const auto f = MakeMinerFixture(seed);
    MinerConfig cfg;  // lambda 0.1, budget 1, 50 iterations
    const auto& ex = f.corpus.train[0];
    const auto r = MineHardNegative(ex.image, ex.text, f.params, cfg);
    ASSERT_FALSE(r.trace.empty());
    for (size_t i = 1; i < r.trace.size(); ++i) {
      EXPECT_GE(r.trace[i].objective, r.trace[i - 1].objective) << "seed " << seed;
      EXPECT_GE(r.trace[i].distance, r.trace[i - 1].distance) << "seed " << seed;
    }
    const double d = FeatureDistance({r.image}, {ex.image}, f.params);
    EXPECT_LE(d, cfg.budget_m + 1e-6);
    EXPECT_NEAR(d, r.trace.back().distance, 1e-9);
    EXPECT_GT(MaxAbsDifference(r.image, ex.image), 0.0);
    for (double v : r.image.values()) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(MinerTest, StrongerPenaltyMovesLess) {
  for (uint64_t seed = 0; seed < 5; ++seed) {
    const auto f = MakeMinerFixture(seed);
    const auto& ex = f.corpus.train[0];
    MinerConfig strong, weak;
    strong.lambda = 10;
    weak.lambda = 0.01;
    const double ds =
        FeatureDistance({MineHardNegative(ex.image, ex.text, f.params, strong).image}, {ex.image}, f.params);
    const double dw =
        FeatureDistance({MineHardNegative(ex.image, ex.text, f.params, weak).image}, {ex.image}, f.params);
    EXPECT_LE(ds, dw) << "seed " << seed;
  }
}

TEST(MinerTest, TraceCsv) {
  const std::string csv = FormatMinerTraceCsv({{1, 0.5, 0.25}});
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "iter,J,D");
}

TEST(MinerTest, ConfigValidation) {
  MinerConfig cfg;
  cfg.lambda = -1;
  EXPECT_THROW(cfg.Validate(), Error);
  const auto parsed = MinerConfig::FromConfig(KeyValueConfig::Parse("[miner]\nlambda = 0.5\n"));
  EXPECT_DOUBLE_EQ(parsed.lambda, 0.5);
  try {
    MinerConfig::FromConfig(KeyValueConfig::Parse("[miner]\nlamda = 0.5\n"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSchemaError);
    EXPECT_NE(e.detail().find("miner.lamda"), std::string::npos);
  }
}

TEST(EasyNegativeTest, DeterministicAndSeedSensitive) {
  auto client = oracle::OracleClient::Toy();
  PairRecord pair;
  pair.id = "x";
  pair.text = "glands in stroma";
  const ImageTensor like(24, 24, 3);
  const auto a = GenerateEasyNegative(pair, "glands in fat", like, 4, *client);
  const auto b = GenerateEasyNegative(pair, "glands in fat", like, 4, *client);
  const auto c = GenerateEasyNegative(pair, "glands in fat", like, 5, *client);
  EXPECT_EQ(a.image, b.image);
  EXPECT_NE(a.image, c.image);
  EXPECT_TRUE(a.image.SameShape(like));
  EXPECT_EQ(a.prompt, "glands in fat");
}

TEST(EasyNegativeTest, FartherFromCaptionThanOriginal) {
  auto client = oracle::OracleClient::Toy();
  oracle::ImageStore store(::testing::TempDir());
  const auto pairs = bench::MakeToyBenchCorpus(50, 3, *client, store, 24);
  Rng rng(3);
  int farther = 0;
  for (const auto& pair : pairs) {
    // Corrupt by swapping the first Entities phrase for another term.
    const PhraseSpan& span = pair.phrases[pair.SpansWithRole(SemanticRole::kEntities)[0]];
    std::string corrupted = pair.text;
    corrupted.replace(span.start, span.length(), "adipose tissue");
    const ImageTensor original = store.Get(pair.image_ref);
    const auto neg = GenerateEasyNegative(pair, corrupted, original, rng.NextU64(), *client);
    const auto caption = client->EmbedText({pair.text})[0].values;
    const auto img = client->EmbedImages(std::vector<ImageTensor>{original, neg.image});
    if (oracle::Cosine(caption, img[1].values) < oracle::Cosine(caption, img[0].values)) ++farther;
  }
  EXPECT_GE(farther, 45);
}

}  // namespace
}  // namespace pathobench::imageforge
