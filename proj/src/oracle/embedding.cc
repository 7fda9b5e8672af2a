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

#include "pathobench/oracle/embedding.h"

#include <cmath>

#include "pathobench/core/error.h"

namespace pathobench::oracle {

double Dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "dot of vectors with dims " + std::to_string(a.size()) +
                    " and " + std::to_string(b.size()));
  }
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double Norm(std::span<const double> a) { return std::sqrt(Dot(a, a)); }

double Cosine(std::span<const double> a, std::span<const double> b) {
  const double na = Norm(a);
  const double nb = Norm(b);
  if (na == 0.0 || nb == 0.0) {
    throw Error(ErrorCode::kZeroVector, "cosine of a zero vector");
  }
  return Dot(a, b) / (na * nb);
}

void NormalizeInPlace(std::vector<double>& v) {
  const double n = Norm(v);
  if (n == 0.0) throw Error(ErrorCode::kZeroVector, "cannot normalise zero vector");
  for (double& x : v) x /= n;
}

Embedding MakeNormalized(std::vector<double> v) {
  NormalizeInPlace(v);
  return {std::move(v), true};
}

bool IsValidEmbedding(const Embedding& e) {
  for (double x : e.values) {
    if (!std::isfinite(x)) return false;
  }
  if (e.normalized) return std::abs(Norm(e.values) - 1.0) <= 1e-9;
  return true;
}

}  // namespace pathobench::oracle
