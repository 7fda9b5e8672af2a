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

#ifndef PATHOBENCH_TEXTPERTURB_ATTRIBUTE_LEXICON_H_
#define PATHOBENCH_TEXTPERTURB_ATTRIBUTE_LEXICON_H_

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pathobench::textperturb {

enum class AttributeDimension {
  kPathologicalState,     // pathological states and grading
  kMorphology,            // morphological features
  kHistochemistry,        // histochemical characteristics
  kStaining,              // staining methods
  kAnatomy,               // anatomical structures and organs
  kBiomolecular,          // biomolecular features
  kColor,                 // color information
};

inline constexpr size_t kNumDimensions = 7;

std::string_view DimensionName(AttributeDimension dim);
std::optional<AttributeDimension> ParseDimension(std::string_view name);

// Seven disjoint term sets. Terms compare case-insensitively.
class AttributeLexicon {
 public:
  AttributeLexicon() = default;

  // Throws kSchemaError if a term already sits in another dimension.
  void Add(std::string_view term, AttributeDimension dim);

  // TSV lines `term<TAB>dimension`; '#' comments.
  static AttributeLexicon FromTsv(std::string_view contents);
  static AttributeLexicon Load(const std::string& path);

  // Every dimension non-empty and pairwise disjoint after case folding.
  void Validate() const;

  std::optional<AttributeDimension> Find(std::string_view term) const;
  const std::vector<std::string>& Terms(AttributeDimension dim) const {
    return dims_[static_cast<size_t>(dim)];
  }
  // Per-dimension term lists, the shape the toy oracle takes for mask_fill.
  std::vector<std::vector<std::string>> Groups() const;
  size_t max_term_tokens() const { return max_tokens_; }

 private:
  std::array<std::vector<std::string>, kNumDimensions> dims_;
  std::map<std::string, AttributeDimension> index_;
  size_t max_tokens_ = 0;
};

enum class RelationshipTag { kContrasting, kParallel, kInclusion };

std::string_view RelationshipName(RelationshipTag tag);
RelationshipTag ParseRelationship(std::string_view name);

// Unordered term pairs with their relationship; unknown pairs are Parallel.
class RelationTable {
 public:
  void Add(std::string_view a, std::string_view b, RelationshipTag tag);
  static RelationTable FromTsv(std::string_view contents);
  static RelationTable Load(const std::string& path);

  RelationshipTag Lookup(std::string_view a, std::string_view b) const;
  size_t size() const { return pairs_.size(); }

 private:
  std::map<std::pair<std::string, std::string>, RelationshipTag> pairs_;
};

}  // namespace pathobench::textperturb

#endif  // PATHOBENCH_TEXTPERTURB_ATTRIBUTE_LEXICON_H_
