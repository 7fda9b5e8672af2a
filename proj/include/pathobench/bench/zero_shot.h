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

#ifndef PATHOBENCH_BENCH_ZERO_SHOT_H_
#define PATHOBENCH_BENCH_ZERO_SHOT_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pathobench/core/formats.h"
#include "pathobench/oracle/client.h"
#include "pathobench/oracle/image_store.h"

namespace pathobench::bench {

struct ManifestEntry {
  std::string image_path;
  std::string label;
};

// `image_path<TAB>label` lines; '#' comments.
std::vector<ManifestEntry> ParseManifest(std::string_view tsv);
// `label<TAB>prompt` lines; class order is file order. Duplicate labels are a
// kSchemaError.
std::vector<std::pair<std::string, std::string>> ParsePrompts(std::string_view tsv);

struct ZeroShotResult {
  std::vector<std::string> classes;
  std::vector<std::vector<int64_t>> confusion;  // [true][predicted]
  std::vector<int64_t> support;
  std::vector<double> precision, recall, f1;
  double balanced_accuracy = 0.0;
  double weighted_f1 = 0.0;
};

// Balanced accuracy averages recall over classes with support; a class never
// predicted has precision and F1 0.
ZeroShotResult ZeroShotMetrics(const std::vector<std::string>& classes,
                               const std::vector<std::vector<int64_t>>& confusion);

// Predicts argmax_c cosine(embed_image(x), embed_text(prompt_c)). Throws
// kEmptyManifest, kMissingPrompt, or kInvalidArgument for < 2 classes.
ZeroShotResult ZeroShotClassify(
    const std::vector<ManifestEntry>& manifest,
    const std::vector<std::pair<std::string, std::string>>& prompts,
    oracle::OracleClient& client, const oracle::ImageStore& images);

OrderedJson ZeroShotToJson(const ZeroShotResult& result);

}  // namespace pathobench::bench

#endif  // PATHOBENCH_BENCH_ZERO_SHOT_H_
