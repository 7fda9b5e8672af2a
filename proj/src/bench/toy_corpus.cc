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

#include "pathobench/bench/toy_corpus.h"

#include <algorithm>
#include <array>
#include <cstdio>
#include <string_view>

#include "pathobench/core/error.h"
#include "pathobench/core/hash.h"
#include "pathobench/core/rng.h"
#include "pathobench/core/text.h"

namespace pathobench::bench {

namespace {

constexpr std::array<std::string_view, 20> kDescriptors = {
    "poorly differentiated", "well differentiated", "atypical", "pleomorphic",
    "hyperchromatic", "cribriform", "papillary", "necrotic", "fibrotic",
    "dilated", "mucinous", "infiltrative", "eosinophilic", "vacuolated",
    "crowded", "irregular", "enlarged", "dense", "focal", "diffuse"};

constexpr std::array<std::string_view, 20> kEntities = {
    "adenocarcinoma", "carcinoma", "glands", "nuclei", "stroma",
    "lymphocytes", "mucosa", "submucosa", "muscularis propria", "lymph node",
    "tumor cells", "vessels", "crypts", "epithelium", "macrophages",
    "fibroblasts", "colon", "stomach", "liver", "duct"};

constexpr std::array<std::string_view, 12> kConnections = {
    "invading", "within", "adjacent to", "surrounding", "involving",
    "extending into", "lined by", "surrounded by", "infiltrating into",
    "arising from", "composed of", "associated with"};

// Slot roles of the caption skeleton
//   D E C D E, C E and D E C E.
constexpr std::array<char, 11> kSkeleton = {'D', 'E', 'C', 'D', 'E', 'C',
                                            'E', 'D', 'E', 'C', 'E'};

template <size_t N>
std::vector<std::string_view> Draw(const std::array<std::string_view, N>& pool,
                                   size_t k, Rng& rng) {
  std::vector<std::string_view> items(pool.begin(), pool.end());
  rng.Shuffle(std::span<std::string_view>(items));
  items.resize(k);
  return items;
}

// Text placed before slot `slot`.
std::string_view Separator(size_t slot) {
  switch (slot) {
    case 5: return ", ";
    case 7: return " and ";
    default: return " ";
  }
}

template <size_t N>
std::vector<std::string> Words(const std::array<std::string_view, N>& pool) {
  std::vector<std::string> out;
  for (std::string_view term : pool) {
    for (std::string& w : SplitWhitespace(term)) out.push_back(std::move(w));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<std::vector<std::string>> ToyTermGroups() {
  return {Words(kEntities), Words(kDescriptors), Words(kConnections)};
}

std::vector<PairRecord> MakeToyBenchCorpus(size_t n, uint64_t seed,
                                           oracle::OracleClient& client,
                                           oracle::ImageStore& store,
                                           int image_side) {
  if (n == 0) throw Error(ErrorCode::kEmptyCorpus, "toy corpus size must be >= 1");
  std::vector<PairRecord> out;
  Rng rng(seed);
  for (size_t i = 0; i < n; ++i) {
    Rng r = rng.Split(i);
    const auto d = Draw(kDescriptors, 3, r);
    const auto e = Draw(kEntities, 5, r);
    const auto c = Draw(kConnections, 3, r);
    size_t di = 0, ei = 0, ci = 0;
    PairRecord pair;
    char id[32];
    std::snprintf(id, sizeof(id), "toy-%05zu", i);
    pair.id = id;
    pair.source = CorpusSource::kSynthetic;
    for (size_t s = 0; s < kSkeleton.size(); ++s) {
      std::string_view term;
      SemanticRole role;
      switch (kSkeleton[s]) {
        case 'D': term = d[di++]; role = SemanticRole::kDescriptors; break;
        case 'E': term = e[ei++]; role = SemanticRole::kEntities; break;
        default: term = c[ci++]; role = SemanticRole::kConnections; break;
      }
      if (s > 0) pair.text += Separator(s);
      std::string word(term);
      if (s == 0) word[0] = static_cast<char>(word[0] - 'a' + 'A');
      pair.phrases.push_back({pair.text.size(), pair.text.size() + word.size(), role, {}});
      pair.text += word;
    }
    pair.text += ".";
    const ImageTensor image =
        client.GenerateImage(pair.text, Mix64(seed ^ Fnv1a64(pair.id)), image_side,
                             image_side, 3);
    pair.image_ref = store.Put(image);
    out.push_back(std::move(pair));
  }
  return out;
}

}  // namespace pathobench::bench
