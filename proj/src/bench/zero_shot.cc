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

#include "pathobench/bench/zero_shot.h"

#include <map>
#include <sstream>

#include "pathobench/core/error.h"

namespace pathobench::bench {

namespace {

std::vector<std::pair<std::string, std::string>> ParseTwoColumns(std::string_view tsv,
                                                                 const char* what) {
  std::vector<std::pair<std::string, std::string>> rows;
  std::istringstream in{std::string(tsv)};
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
      throw Error(ErrorCode::kSchemaError, std::string(what) + " line " +
                                               std::to_string(line_no) +
                                               ": expected two tab-separated fields");
    }
    rows.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return rows;
}

}  // namespace

std::vector<ManifestEntry> ParseManifest(std::string_view tsv) {
  std::vector<ManifestEntry> out;
  for (auto& [path, label] : ParseTwoColumns(tsv, "manifest")) {
    out.push_back({std::move(path), std::move(label)});
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> ParsePrompts(std::string_view tsv) {
  auto rows = ParseTwoColumns(tsv, "prompts");
  std::map<std::string, int> seen;
  for (const auto& [label, prompt] : rows) {
    if (seen[label]++) {
      throw Error(ErrorCode::kSchemaError, "class '" + label + "' has more than one prompt");
    }
  }
  return rows;
}

ZeroShotResult ZeroShotMetrics(const std::vector<std::string>& classes,
                               const std::vector<std::vector<int64_t>>& confusion) {
  const size_t c = classes.size();
  if (confusion.size() != c) {
    throw Error(ErrorCode::kDimensionMismatch, "confusion matrix size does not match classes");
  }
  ZeroShotResult r;
  r.classes = classes;
  r.confusion = confusion;
  r.support.assign(c, 0);
  std::vector<int64_t> predicted(c, 0);
  int64_t total = 0;
  for (size_t i = 0; i < c; ++i) {
    if (confusion[i].size() != c) {
      throw Error(ErrorCode::kDimensionMismatch, "confusion matrix is not square");
    }
    for (size_t j = 0; j < c; ++j) {
      if (confusion[i][j] < 0) throw Error(ErrorCode::kInvalidArgument, "negative count");
      r.support[i] += confusion[i][j];
      predicted[j] += confusion[i][j];
    }
    total += r.support[i];
  }
  if (total == 0) throw Error(ErrorCode::kEmptyManifest, "no labelled examples");
  double recall_sum = 0.0;
  size_t present = 0;
  for (size_t i = 0; i < c; ++i) {
    const double tp = static_cast<double>(confusion[i][i]);
    const double rec = r.support[i] ? tp / r.support[i] : 0.0;
    const double prec = predicted[i] ? tp / predicted[i] : 0.0;
    const double f1 = prec + rec > 0 ? 2 * prec * rec / (prec + rec) : 0.0;
    r.recall.push_back(rec);
    r.precision.push_back(prec);
    r.f1.push_back(f1);
    if (r.support[i]) {
      recall_sum += rec;
      ++present;
    }
    r.weighted_f1 += f1 * r.support[i];
  }
  r.balanced_accuracy = recall_sum / present;
  r.weighted_f1 /= total;
  return r;
}

ZeroShotResult ZeroShotClassify(
    const std::vector<ManifestEntry>& manifest,
    const std::vector<std::pair<std::string, std::string>>& prompts,
    oracle::OracleClient& client, const oracle::ImageStore& images) {
  if (manifest.empty()) throw Error(ErrorCode::kEmptyManifest, "manifest is empty");
  std::map<std::string, size_t> index;
  std::vector<std::string> classes, texts;
  for (const auto& [label, prompt] : prompts) {
    index[label] = classes.size();
    classes.push_back(label);
    texts.push_back(prompt);
  }
  for (const ManifestEntry& e : manifest) {
    if (!index.count(e.label)) {
      throw Error(ErrorCode::kMissingPrompt, "no prompt for class '" + e.label + "'");
    }
  }
  if (classes.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "zero-shot needs at least two classes");
  }
  const std::vector<oracle::Embedding> prompt_emb = client.EmbedText(texts);
  std::vector<ImageTensor> tensors;
  for (const ManifestEntry& e : manifest) tensors.push_back(images.Get(e.image_path));
  const std::vector<oracle::Embedding> image_emb = client.EmbedImages(tensors);

  std::vector<std::vector<int64_t>> confusion(classes.size(),
                                              std::vector<int64_t>(classes.size(), 0));
  for (size_t i = 0; i < manifest.size(); ++i) {
    size_t best = 0;
    double best_cos = -2.0;
    for (size_t c = 0; c < classes.size(); ++c) {
      const double cs = oracle::Cosine(image_emb[i].values, prompt_emb[c].values);
      if (cs > best_cos) {
        best_cos = cs;
        best = c;
      }
    }
    ++confusion[index.at(manifest[i].label)][best];
  }
  return ZeroShotMetrics(classes, confusion);
}

OrderedJson ZeroShotToJson(const ZeroShotResult& r) {
  OrderedJson per_class = OrderedJson::array();
  for (size_t i = 0; i < r.classes.size(); ++i) {
    per_class.push_back({{"label", r.classes[i]},
                         {"support", r.support[i]},
                         {"precision", r.precision[i]},
                         {"recall", r.recall[i]},
                         {"f1", r.f1[i]}});
  }
  return {{"balanced_accuracy", r.balanced_accuracy},
          {"weighted_f1", r.weighted_f1},
          {"classes", per_class},
          {"confusion", r.confusion}};
}

}  // namespace pathobench::bench
