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

#ifndef PATHOBENCH_CORE_TYPES_H_
#define PATHOBENCH_CORE_TYPES_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pathobench {

enum class SemanticRole { kEntities, kDescriptors, kConnections };

inline constexpr std::array<SemanticRole, 3> kAllRoles = {
    SemanticRole::kEntities, SemanticRole::kDescriptors,
    SemanticRole::kConnections};

enum class PerturbationType {
  kInformationLoss1,
  kInformationLoss2,
  kSemanticDrift,
  kOrderVariation,
};

inline constexpr std::array<PerturbationType, 4> kAllPerturbations = {
    PerturbationType::kInformationLoss1, PerturbationType::kInformationLoss2,
    PerturbationType::kSemanticDrift, PerturbationType::kOrderVariation};

enum class CorpusSource { kTextbook, kPubmed, kSynthetic };

std::string_view RoleName(SemanticRole role);
SemanticRole ParseRole(std::string_view name);
std::string_view PerturbationName(PerturbationType type);
PerturbationType ParsePerturbation(std::string_view name);
std::string_view SourceName(CorpusSource source);
CorpusSource ParseSource(std::string_view name);

// Byte offsets into the UTF-8 text, half-open.
struct PhraseSpan {
  size_t start = 0;
  size_t end = 0;
  SemanticRole role = SemanticRole::kEntities;
  std::optional<double> saliency;

  size_t length() const { return end - start; }
  bool operator==(const PhraseSpan&) const = default;
};

struct PairRecord {
  std::string id;
  std::string image_ref;
  std::string text;
  std::vector<PhraseSpan> phrases;
  CorpusSource source = CorpusSource::kSynthetic;

  std::string_view PhraseText(const PhraseSpan& span) const {
    return std::string_view(text).substr(span.start, span.length());
  }
  // Indices into `phrases` carrying `role`, in text order.
  std::vector<size_t> SpansWithRole(SemanticRole role) const;
  bool operator==(const PairRecord&) const = default;
};

// Throws kSchemaError if spans overlap, are out of order, or leave the text.
void ValidatePhrases(const PairRecord& pair);

// ---------------------------------------------------------------------------
// Edit logs. Each log replays against the original text byte-exactly.

struct DeletedSpan {
  size_t start = 0;
  size_t end = 0;
  std::string text;
  double cosine = 0.0;  // raw phrase-image cosine that ranked the span
  bool operator==(const DeletedSpan&) const = default;
};

// Spans in deletion order (most salient first). A log of depth n also holds
// the depth-k variant for every k < n as its prefix.
struct DeletionLog {
  std::vector<DeletedSpan> spans;
  bool operator==(const DeletionLog&) const = default;
};

struct SubstitutionLog {
  std::string original_token;
  std::string substitute;
  size_t token_start = 0;
  size_t token_end = 0;
  size_t span_start = 0;
  size_t span_end = 0;
  bool operator==(const SubstitutionLog&) const = default;
};

struct Slot {
  size_t start = 0;
  size_t end = 0;
  bool operator==(const Slot&) const = default;
};

// variants[v][i] = index of the slot whose original text lands in slot i.
struct PermutationLog {
  std::vector<Slot> slots;
  std::vector<std::vector<size_t>> variants;
  std::vector<double> cosines;
  bool operator==(const PermutationLog&) const = default;
};

using EditLog = std::variant<DeletionLog, SubstitutionLog, PermutationLog>;

struct BenchmarkInstance {
  std::string instance_id;
  std::string pair_id;
  std::string image_ref;
  std::string original_text;
  std::string perturbed_text;
  PerturbationType perturbation = PerturbationType::kInformationLoss1;
  SemanticRole role = SemanticRole::kEntities;
  EditLog edit_log;
  uint64_t seed = 0;

  bool operator==(const BenchmarkInstance&) const = default;
};

}  // namespace pathobench

#endif  // PATHOBENCH_CORE_TYPES_H_
