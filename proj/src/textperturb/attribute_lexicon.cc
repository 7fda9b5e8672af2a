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

#include "pathobench/textperturb/attribute_lexicon.h"

#include <array>
#include <sstream>

#include "pathobench/core/error.h"
#include "pathobench/core/formats.h"
#include "pathobench/core/text.h"

namespace pathobench::textperturb {

namespace {

constexpr std::array<std::string_view, kNumDimensions> kDimensionNames = {
    "pathological_state", "morphology", "histochemistry", "staining",
    "anatomy",            "biomolecular", "color"};

// Case-folded with runs of whitespace reduced to one space.
std::string NormalizeTerm(std::string_view term) {
  std::string out;
  for (const std::string& w : SplitWhitespace(FoldCase(term))) {
    if (!out.empty()) out.push_back(' ');
    out += w;
  }
  return out;
}

template <typename Fn>
void ForEachTsvRow(std::string_view contents, size_t columns, Fn fn) {
  std::istringstream in{std::string(contents)};
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    size_t pos = 0;
    for (;;) {
      const size_t tab = line.find('\t', pos);
      cells.push_back(line.substr(pos, tab - pos));
      if (tab == std::string::npos) break;
      pos = tab + 1;
    }
    if (cells.size() != columns) {
      throw Error(ErrorCode::kSchemaError,
                  "line " + std::to_string(line_no) + ": expected " +
                      std::to_string(columns) + " tab-separated columns");
    }
    fn(cells, line_no);
  }
}

}  // namespace

std::string_view DimensionName(AttributeDimension dim) {
  return kDimensionNames[static_cast<size_t>(dim)];
}

std::optional<AttributeDimension> ParseDimension(std::string_view name) {
  for (size_t i = 0; i < kNumDimensions; ++i) {
    if (kDimensionNames[i] == name) return static_cast<AttributeDimension>(i);
  }
  return std::nullopt;
}

void AttributeLexicon::Add(std::string_view term, AttributeDimension dim) {
  const std::string key = NormalizeTerm(term);
  if (key.empty()) throw Error(ErrorCode::kSchemaError, "empty attribute term");
  auto it = index_.find(key);
  if (it != index_.end()) {
    if (it->second == dim) return;
    throw Error(ErrorCode::kSchemaError,
                "term '" + key + "' appears in dimensions " +
                    std::string(DimensionName(it->second)) + " and " +
                    std::string(DimensionName(dim)));
  }
  index_.emplace(key, dim);
  dims_[static_cast<size_t>(dim)].push_back(key);
  max_tokens_ = std::max(max_tokens_, Tokenize(key).size());
}

AttributeLexicon AttributeLexicon::FromTsv(std::string_view contents) {
  AttributeLexicon lexicon;
  ForEachTsvRow(contents, 2, [&](const std::vector<std::string>& cells,
                                 size_t line_no) {
    const auto dim = ParseDimension(cells[1]);
    if (!dim) {
      throw Error(ErrorCode::kSchemaError, "line " + std::to_string(line_no) +
                                               ": unknown dimension '" +
                                               cells[1] + "'");
    }
    lexicon.Add(cells[0], *dim);
  });
  return lexicon;
}

AttributeLexicon AttributeLexicon::Load(const std::string& path) {
  AttributeLexicon lexicon = FromTsv(ReadFile(path));
  lexicon.Validate();
  return lexicon;
}

void AttributeLexicon::Validate() const {
  for (size_t i = 0; i < kNumDimensions; ++i) {
    if (dims_[i].empty()) {
      throw Error(ErrorCode::kSchemaError,
                  "attribute dimension " + std::string(kDimensionNames[i]) +
                      " is empty");
    }
  }
  // Disjointness is enforced by Add(); re-check the index for consistency.
  size_t total = 0;
  for (const auto& d : dims_) total += d.size();
  if (total != index_.size()) {
    throw Error(ErrorCode::kSchemaError, "attribute dimensions overlap");
  }
}

std::optional<AttributeDimension> AttributeLexicon::Find(
    std::string_view term) const {
  auto it = index_.find(NormalizeTerm(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::vector<std::string>> AttributeLexicon::Groups() const {
  return {dims_.begin(), dims_.end()};
}

std::string_view RelationshipName(RelationshipTag tag) {
  switch (tag) {
    case RelationshipTag::kContrasting: return "contrasting";
    case RelationshipTag::kParallel: return "parallel";
    case RelationshipTag::kInclusion: return "inclusion";
  }
  return "";
}

RelationshipTag ParseRelationship(std::string_view name) {
  for (RelationshipTag t : {RelationshipTag::kContrasting,
                            RelationshipTag::kParallel,
                            RelationshipTag::kInclusion}) {
    if (RelationshipName(t) == name) return t;
  }
  throw Error(ErrorCode::kSchemaError,
              "unknown relationship '" + std::string(name) + "'");
}

void RelationTable::Add(std::string_view a, std::string_view b,
                        RelationshipTag tag) {
  std::string x = NormalizeTerm(a);
  std::string y = NormalizeTerm(b);
  if (y < x) std::swap(x, y);
  pairs_[{x, y}] = tag;
}

RelationTable RelationTable::FromTsv(std::string_view contents) {
  RelationTable table;
  ForEachTsvRow(contents, 3, [&](const std::vector<std::string>& cells, size_t) {
    table.Add(cells[0], cells[1], ParseRelationship(cells[2]));
  });
  return table;
}

RelationTable RelationTable::Load(const std::string& path) {
  return FromTsv(ReadFile(path));
}

RelationshipTag RelationTable::Lookup(std::string_view a,
                                      std::string_view b) const {
  std::string x = NormalizeTerm(a);
  std::string y = NormalizeTerm(b);
  if (y < x) std::swap(x, y);
  auto it = pairs_.find({x, y});
  return it == pairs_.end() ? RelationshipTag::kParallel : it->second;
}

}  // namespace pathobench::textperturb
