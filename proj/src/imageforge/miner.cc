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

#include "pathobench/imageforge/miner.h"

#include <cmath>

#include "pathobench/core/error.h"
#include "pathobench/core/formats.h"
#include "pathobench/core/parallel.h"

namespace pathobench::imageforge {

using losses::PoolingOperator;
using losses::ToyEncoderParams;
using losses::Vector;

namespace {

PoolingOperator PoolFor(const ImageTensor& image, const ToyEncoderParams& params) {
  const int grid = static_cast<int>(std::lround(std::sqrt(static_cast<double>(params.image_dim()))));
  if (grid * grid != static_cast<int>(params.image_dim())) {
    throw Error(ErrorCode::kInvalidArgument, "image_dim must be a square grid");
  }
  return PoolingOperator(image.height(), image.width(), image.channels(), grid);
}

double Softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }
double Sigmoid(double z) {
  return z >= 0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
}

class Objective {
 public:
  Objective(const ImageTensor& origin, const Vector& text,
            const ToyEncoderParams& params, double lambda)
      : pool_(PoolFor(origin, params)),
        params_(params),
        lambda_(lambda),
        t_(params.EncodeText(text)),
        f0_(params.EncodeImage(pool_.Pool(origin))) {
    if (t_.norm() == 0) throw Error(ErrorCode::kZeroVector, "text feature is zero");
  }

  struct Eval {
    double j, l, d;
  };

  Eval Value(const ImageTensor& x) const {
    const Vector f = params_.EncodeImage(pool_.Pool(x));
    const double c = Cos(f);
    const double l = Softplus(-params_.temperature() * c);
    const double d = (f - f0_).squaredNorm();
    return {l - lambda_ * d, l, d};
  }

  double Distance(const ImageTensor& x) const {
    return (params_.EncodeImage(pool_.Pool(x)) - f0_).squaredNorm();
  }

  // dJ/dpixels.
  Vector Gradient(const ImageTensor& x) const {
    const Vector f = params_.EncodeImage(pool_.Pool(x));
    const double tau = params_.temperature();
    const double c = Cos(f);
    const double nf = f.norm();
    const double nt = t_.norm();
    const double dl_dc = -tau * Sigmoid(-tau * c);
    const Vector df = dl_dc * (t_ / (nt * nf) - c * f / (nf * nf)) - 2.0 * lambda_ * (f - f0_);
    Vector g = pool_.Backward(params_.img_proj * df);
    if (!g.allFinite()) throw Error(ErrorCode::kNonFiniteGradient, "miner gradient not finite");
    return g;
  }

 private:
  double Cos(const Vector& f) const {
    const double nf = f.norm();
    if (nf == 0) throw Error(ErrorCode::kZeroVector, "image feature is zero");
    return t_.dot(f) / (t_.norm() * nf);
  }

  PoolingOperator pool_;
  const ToyEncoderParams& params_;
  double lambda_;
  Vector t_;
  Vector f0_;
};

ImageTensor Step(const ImageTensor& x, const Vector& g, double s) {
  ImageTensor out = x;
  for (size_t i = 0; i < out.size(); ++i) out.values()[i] += s * g[static_cast<Eigen::Index>(i)];
  out.Clamp();
  return out;
}

}  // namespace

void MinerConfig::Validate() const {
  if (!(lambda >= 0)) throw Error(ErrorCode::kInvalidArgument, "miner.lambda must be >= 0");
  if (!(budget_m > 0)) throw Error(ErrorCode::kInvalidArgument, "miner.budget_m must be > 0");
  if (!(step_size > 0)) throw Error(ErrorCode::kInvalidArgument, "miner.step_size must be > 0");
  if (max_iters < 0) throw Error(ErrorCode::kInvalidArgument, "miner.max_iters must be >= 0");
  if (!(stop_tolerance > 0)) {
    throw Error(ErrorCode::kInvalidArgument, "miner.stop_tolerance must be > 0");
  }
  if (max_backtracks < 1) {
    throw Error(ErrorCode::kInvalidArgument, "miner.max_backtracks must be >= 1");
  }
}

MinerConfig MinerConfig::FromConfig(const KeyValueConfig& cfg) {
  const auto unknown = cfg.UnknownKeys(
      "miner", {"lambda", "budget_m", "step_size", "max_iters", "stop_tolerance",
                "max_backtracks"});
  if (!unknown.empty()) {
    throw Error(ErrorCode::kSchemaError, "unknown config key " + *unknown.begin());
  }
  MinerConfig c;
  c.lambda = cfg.GetDouble("miner.lambda", c.lambda);
  c.budget_m = cfg.GetDouble("miner.budget_m", c.budget_m);
  c.step_size = cfg.GetDouble("miner.step_size", c.step_size);
  c.max_iters = static_cast<int>(cfg.GetInt("miner.max_iters", c.max_iters));
  c.stop_tolerance = cfg.GetDouble("miner.stop_tolerance", c.stop_tolerance);
  c.max_backtracks = static_cast<int>(cfg.GetInt("miner.max_backtracks", c.max_backtracks));
  c.Validate();
  return c;
}

double FeatureDistance(const std::vector<ImageTensor>& a,
                       const std::vector<ImageTensor>& b,
                       const ToyEncoderParams& params) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kLengthMismatch, "feature_distance batches differ in length");
  }
  if (a.empty()) return 0.0;
  double total = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i].SameShape(b[i])) {
      throw Error(ErrorCode::kDimensionMismatch, "paired images differ in shape");
    }
    const PoolingOperator pool = PoolFor(a[i], params);
    total += (params.EncodeImage(pool.Pool(a[i])) - params.EncodeImage(pool.Pool(b[i])))
                 .squaredNorm();
  }
  return total / a.size();
}

MinerResult MineHardNegative(const ImageTensor& image, const Vector& text_features,
                             const ToyEncoderParams& params, const MinerConfig& cfg) {
  cfg.Validate();
  MinerResult result;
  result.image = image;
  result.stop_reason = "max_iters";
  if (cfg.max_iters == 0) return result;

  const Objective obj(image, text_features, params, cfg.lambda);
  ImageTensor x = image;
  Objective::Eval cur = obj.Value(x);
  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    const Vector g = obj.Gradient(x);
    double s = cfg.step_size;
    bool accepted = false;
    bool at_budget = false;
    ImageTensor next;
    Objective::Eval val{};
    for (int k = 0; k < cfg.max_backtracks; ++k, s *= 0.5) {
      next = Step(x, g, s);
      if (obj.Distance(next) > cfg.budget_m) {
        // Largest step along g that stays inside the budget.
        double lo = 0.0, hi = s;
        for (int b = 0; b < 60; ++b) {
          const double mid = 0.5 * (lo + hi);
          (obj.Distance(Step(x, g, mid)) <= cfg.budget_m ? lo : hi) = mid;
        }
        next = Step(x, g, lo);
        val = obj.Value(next);
        if (val.j > cur.j) {
          accepted = at_budget = true;
          break;
        }
        s = lo;  // keep backtracking inside the budget
        continue;
      }
      val = obj.Value(next);
      if (val.j > cur.j) {
        accepted = true;
        break;
      }
    }
    if (accepted) {
      const double delta = val.j - cur.j;
      x = std::move(next);
      cur = val;
      result.trace.push_back({iter, cur.j, cur.d});
      if (!at_budget && delta < cfg.stop_tolerance) {
        result.stop_reason = "converged";
        break;
      }
    }
    if (at_budget) {
      result.stop_reason = "budget";
      break;
    }
    if (!accepted) {
      result.stop_reason = "stalled";
      break;
    }
  }
  result.image = std::move(x);
  return result;
}

std::string FormatMinerTraceCsv(const std::vector<MinerStep>& trace) {
  std::string out = "iter,J,D\n";
  for (const MinerStep& s : trace) {
    out += std::to_string(s.iter) + "," + FormatDouble(s.objective) + "," +
           FormatDouble(s.distance) + "\n";
  }
  return out;
}

void AttachHardNegatives(losses::ToyCorpus& corpus, const ToyEncoderParams& params,
                         const MinerConfig& cfg, int jobs) {
  for (auto* split : {&corpus.train, &corpus.heldout}) {
    ParallelFor(split->size(), jobs, [&](size_t i) {
      losses::ToyExample& ex = (*split)[i];
      ex.hard_neg_image = MineHardNegative(ex.image, ex.text, params, cfg).image;
    });
  }
}

}  // namespace pathobench::imageforge
