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

#include "pathobench/bench/evaluate.h"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <set>

#include "pathobench/core/error.h"
#include "pathobench/core/hash.h"
#include "pathobench/core/parallel.h"
#include "pathobench/core/text.h"

namespace pathobench::bench {

namespace {

// Caches one embedding per image_ref.
class ImageEmbeddingCache {
 public:
  template <typename Fn>
  std::vector<double> Get(const std::string& ref, Fn compute) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = cache_.find(ref);
      if (it != cache_.end()) return it->second;
    }
    std::vector<double> v = compute();
    std::lock_guard<std::mutex> lock(mu_);
    return cache_.emplace(ref, std::move(v)).first->second;
  }

 private:
  std::mutex mu_;
  std::map<std::string, std::vector<double>> cache_;
};

class OracleScorer : public Scorer {
 public:
  OracleScorer(oracle::OracleClient& client, const oracle::ImageStore& images)
      : client_(client), images_(images) {}

  std::vector<double> Score(const std::string& image_ref,
                            const std::vector<std::string>& texts) override {
    const std::vector<double> img = cache_.Get(image_ref, [&] {
      return client_.EmbedImages({images_.Get(image_ref)}).front().values;
    });
    std::vector<double> out;
    for (const oracle::Embedding& t : client_.EmbedText(texts)) {
      out.push_back(oracle::Cosine(t.values, img));
    }
    return out;
  }
  std::string Name() const override { return "oracle"; }

 private:
  oracle::OracleClient& client_;
  const oracle::ImageStore& images_;
  ImageEmbeddingCache cache_;
};

class ToyEncoderScorer : public Scorer {
 public:
  ToyEncoderScorer(const losses::ToyEncoderParams& params, oracle::OracleClient& client,
                   const oracle::ImageStore& images)
      : params_(params), client_(client), images_(images) {
    params_.Validate();
  }

  std::vector<double> Score(const std::string& image_ref,
                            const std::vector<std::string>& texts) override {
    const std::vector<double> img = cache_.Get(image_ref, [&] {
      const ImageTensor image = images_.Get(image_ref);
      const int grid = static_cast<int>(std::lround(std::sqrt(double(params_.image_dim()))));
      const losses::PoolingOperator pool(image.height(), image.width(), image.channels(), grid);
      const losses::Vector f = params_.EncodeImage(pool.Pool(image));
      return std::vector<double>(f.data(), f.data() + f.size());
    });
    const Eigen::Map<const losses::Vector> fi(img.data(), static_cast<Eigen::Index>(img.size()));
    std::vector<double> out;
    for (const oracle::Embedding& t : client_.EmbedText(texts)) {
      const Eigen::Map<const losses::Vector> x(t.values.data(),
                                               static_cast<Eigen::Index>(t.values.size()));
      const losses::Vector ft = params_.EncodeText(x);
      out.push_back(ft.dot(fi) / (ft.norm() * fi.norm()));
    }
    return out;
  }
  std::string Name() const override { return "toy_encoder"; }

 private:
  losses::ToyEncoderParams params_;
  oracle::OracleClient& client_;
  const oracle::ImageStore& images_;
  ImageEmbeddingCache cache_;
};

class RandomScorer : public Scorer {
 public:
  explicit RandomScorer(uint64_t seed) : seed_(seed) {}
  std::vector<double> Score(const std::string& image_ref,
                            const std::vector<std::string>& texts) override {
    std::vector<double> out;
    for (const std::string& t : texts) {
      const uint64_t h = Mix64(Fnv1a64(t, Fnv1a64(image_ref, Mix64(seed_))));
      out.push_back(static_cast<double>(h >> 11) * 0x1.0p-53);
    }
    return out;
  }
  std::string Name() const override { return "random"; }

 private:
  uint64_t seed_;
};

class ConstantScorer : public Scorer {
 public:
  std::vector<double> Score(const std::string&,
                            const std::vector<std::string>& texts) override {
    return std::vector<double>(texts.size(), 0.0);
  }
  std::string Name() const override { return "constant"; }
};

class PerfectScorer : public Scorer {
 public:
  explicit PerfectScorer(const std::vector<BenchmarkInstance>& instances) {
    for (const BenchmarkInstance& inst : instances) {
      originals_.insert({inst.image_ref, inst.original_text});
    }
  }
  std::vector<double> Score(const std::string& image_ref,
                            const std::vector<std::string>& texts) override {
    std::vector<double> out;
    for (const std::string& t : texts) out.push_back(originals_.count({image_ref, t}) ? 1.0 : 0.0);
    return out;
  }
  std::string Name() const override { return "perfect"; }

 private:
  std::set<std::pair<std::string, std::string>> originals_;
};

struct Trial {
  PerturbationType column;
  double success;  // 0, 1, or a mean for grouped variants
};

std::vector<Trial> RunInstance(const BenchmarkInstance& inst, Scorer& scorer) {
  // texts[0] is the original; the rest are variants.
  std::vector<std::string> texts = {inst.original_text};
  std::vector<PerturbationType> columns;
  bool grouped = false;
  if (const auto* del = std::get_if<DeletionLog>(&inst.edit_log)) {
    if (del->spans.empty() || del->spans.size() > 2) {
      throw Error(ErrorCode::kSchemaError, "deletion log must hold 1 or 2 spans");
    }
    for (size_t depth = 1; depth <= del->spans.size(); ++depth) {
      texts.push_back(ReplayDeletion(inst.original_text, *del, depth));
      columns.push_back(depth == 1 ? PerturbationType::kInformationLoss1
                                   : PerturbationType::kInformationLoss2);
    }
  } else {
    for (std::string& v : ReplayEditLog(inst.original_text, inst.edit_log)) {
      texts.push_back(std::move(v));
      columns.push_back(inst.perturbation);
    }
    grouped = std::holds_alternative<PermutationLog>(inst.edit_log);
  }
  const std::vector<double> scores = scorer.Score(inst.image_ref, texts);
  if (scores.size() != texts.size()) {
    throw Error(ErrorCode::kScorerFailure, "scorer returned wrong number of scores");
  }
  for (double s : scores) {
    if (!std::isfinite(s)) throw Error(ErrorCode::kScorerFailure, "non-finite score");
  }
  std::vector<Trial> trials;
  if (grouped) {
    double wins = 0;
    for (size_t v = 1; v < scores.size(); ++v) wins += scores[0] > scores[v] ? 1.0 : 0.0;
    trials.push_back({inst.perturbation, wins / (scores.size() - 1)});
  } else {
    for (size_t v = 1; v < scores.size(); ++v) {
      trials.push_back({columns[v - 1], scores[0] > scores[v] ? 1.0 : 0.0});
    }
  }
  return trials;
}

}  // namespace

std::unique_ptr<Scorer> MakeOracleScorer(oracle::OracleClient& client,
                                         const oracle::ImageStore& images) {
  return std::make_unique<OracleScorer>(client, images);
}

std::unique_ptr<Scorer> MakeToyEncoderScorer(const losses::ToyEncoderParams& params,
                                             oracle::OracleClient& client,
                                             const oracle::ImageStore& images) {
  return std::make_unique<ToyEncoderScorer>(params, client, images);
}

std::unique_ptr<Scorer> MakeRandomScorer(uint64_t seed) {
  return std::make_unique<RandomScorer>(seed);
}

std::unique_ptr<Scorer> MakeConstantScorer() { return std::make_unique<ConstantScorer>(); }

std::unique_ptr<Scorer> MakePerfectScorer(const std::vector<BenchmarkInstance>& instances) {
  return std::make_unique<PerfectScorer>(instances);
}

double AccuracyCell::accuracy() const {
  return n == 0 ? std::numeric_limits<double>::quiet_NaN() : k / static_cast<double>(n);
}

std::array<double, 12> AccuracyGrid::Accuracies() const {
  std::array<double, 12> out{};
  for (size_t p = 0; p < 4; ++p)
    for (size_t r = 0; r < 3; ++r) out[p * 3 + r] = cells[p][r].accuracy();
  return out;
}

AccuracyGrid AccuracyGrid::FromAccuracies(const std::array<double, 12>& values) {
  AccuracyGrid g;
  for (size_t p = 0; p < 4; ++p)
    for (size_t r = 0; r < 3; ++r) g.cells[p][r] = AccuracyCell::FromAccuracy(values[p * 3 + r]);
  return g;
}

AccuracyGrid Evaluate(const std::vector<BenchmarkInstance>& instances, Scorer& scorer,
                      int jobs) {
  std::vector<std::vector<Trial>> trials(instances.size());
  ParallelFor(instances.size(), jobs, [&](size_t i) {
    try {
      trials[i] = RunInstance(instances[i], scorer);
    } catch (const Error& e) {
      // Transport failures keep their code so callers can tell them apart.
      throw Error(IsOracleError(e.code()) ? e.code() : ErrorCode::kScorerFailure,
                  "instance " + instances[i].instance_id + ": " + e.what());
    }
  });
  AccuracyGrid grid;
  for (size_t i = 0; i < instances.size(); ++i) {
    for (const Trial& t : trials[i]) {
      AccuracyCell& cell = grid.at(t.column, instances[i].role);
      cell.n += 1;
      cell.k += t.success;
    }
  }
  return grid;
}

}  // namespace pathobench::bench
