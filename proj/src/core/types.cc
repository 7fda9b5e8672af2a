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

#include "pathobench/core/types.h"

#include <string>

#include "pathobench/core/error.h"

namespace pathobench {

std::string_view RoleName(SemanticRole role) {
  switch (role) {
    case SemanticRole::kEntities: return "Entities";
    case SemanticRole::kDescriptors: return "Descriptors";
    case SemanticRole::kConnections: return "Connections";
  }
  return "";
}

SemanticRole ParseRole(std::string_view name) {
  for (SemanticRole role : kAllRoles) {
    if (RoleName(role) == name) return role;
  }
  throw Error(ErrorCode::kSchemaError,
              "unknown semantic role '" + std::string(name) + "'");
}

std::string_view PerturbationName(PerturbationType type) {
  switch (type) {
    case PerturbationType::kInformationLoss1: return "InformationLoss1";
    case PerturbationType::kInformationLoss2: return "InformationLoss2";
    case PerturbationType::kSemanticDrift: return "SemanticDrift";
    case PerturbationType::kOrderVariation: return "OrderVariation";
  }
  return "";
}

PerturbationType ParsePerturbation(std::string_view name) {
  for (PerturbationType type : kAllPerturbations) {
    if (PerturbationName(type) == name) return type;
  }
  throw Error(ErrorCode::kSchemaError,
              "unknown perturbation '" + std::string(name) + "'");
}

std::string_view SourceName(CorpusSource source) {
  switch (source) {
    case CorpusSource::kTextbook: return "textbook";
    case CorpusSource::kPubmed: return "pubmed";
    case CorpusSource::kSynthetic: return "synthetic";
  }
  return "";
}

CorpusSource ParseSource(std::string_view name) {
  for (CorpusSource s : {CorpusSource::kTextbook, CorpusSource::kPubmed,
                         CorpusSource::kSynthetic}) {
    if (SourceName(s) == name) return s;
  }
  throw Error(ErrorCode::kSchemaError,
              "unknown corpus source '" + std::string(name) + "'");
}

std::vector<size_t> PairRecord::SpansWithRole(SemanticRole role) const {
  std::vector<size_t> out;
  for (size_t i = 0; i < phrases.size(); ++i) {
    if (phrases[i].role == role) out.push_back(i);
  }
  return out;
}

void ValidatePhrases(const PairRecord& pair) {
  size_t cursor = 0;
  for (const PhraseSpan& span : pair.phrases) {
    if (span.start >= span.end || span.start < cursor ||
        span.end > pair.text.size()) {
      throw Error(ErrorCode::kSchemaError,
                  "invalid phrase span [" + std::to_string(span.start) + "," +
                      std::to_string(span.end) + ") in pair " + pair.id);
    }
    if (span.saliency && !(*span.saliency >= 0.0 && *span.saliency <= 1.0)) {
      throw Error(ErrorCode::kSchemaError,
                  "saliency outside [0,1] in pair " + pair.id);
    }
    cursor = span.end;
  }
}

}  // namespace pathobench
