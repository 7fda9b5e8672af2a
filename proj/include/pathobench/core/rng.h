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

#ifndef PATHOBENCH_CORE_RNG_H_
#define PATHOBENCH_CORE_RNG_H_

#include <cstdint>
#include <span>
#include <utility>

namespace pathobench {

// Counter-based generator: output n is a keyed hash of n, so a stream is
// fully described by (key, counter) and child streams can be derived
// without touching the parent. Bit-identical on every platform.
class Rng {
 public:
  explicit Rng(uint64_t seed = 0);

  uint64_t NextU64();

  // Uniform in [0, 1) with 53 bits of precision.
  double Uniform();

  // Uniform integer in [0, n). n must be positive.
  uint64_t UniformInt(uint64_t n);

  // Standard normal via Box-Muller. No cached second value, so the call
  // sequence alone determines the output.
  double Normal();

  // Independent child stream. Does not advance this generator.
  Rng Split(uint64_t stream_id) const;

  template <typename T>
  void Shuffle(std::span<T> items) {
    for (size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[UniformInt(i)]);
    }
  }

  uint64_t seed() const { return seed_; }
  uint64_t counter() const { return counter_; }

 private:
  Rng(uint64_t seed, uint64_t key) : seed_(seed), key_(key) {}

  uint64_t seed_;
  uint64_t key_;
  uint64_t counter_ = 0;
};

}  // namespace pathobench

#endif  // PATHOBENCH_CORE_RNG_H_
