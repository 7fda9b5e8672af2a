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

#ifndef PATHOBENCH_ORACLE_EMBEDDING_H_
#define PATHOBENCH_ORACLE_EMBEDDING_H_

#include <span>
#include <vector>

namespace pathobench::oracle {

struct Embedding {
  std::vector<double> values;
  bool normalized = false;

  size_t dim() const { return values.size(); }
};

double Dot(std::span<const double> a, std::span<const double> b);
double Norm(std::span<const double> a);

// Throws kZeroVector when either input has zero norm.
double Cosine(std::span<const double> a, std::span<const double> b);

// L2-normalises in place; throws kZeroVector on a zero vector.
void NormalizeInPlace(std::vector<double>& v);
Embedding MakeNormalized(std::vector<double> v);

// Finite entries and, when flagged normalized, unit norm within 1e-9.
bool IsValidEmbedding(const Embedding& e);

}  // namespace pathobench::oracle

#endif  // PATHOBENCH_ORACLE_EMBEDDING_H_
