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

#ifndef PATHOBENCH_TEXTPERTURB_POSITIVE_TEXT_H_
#define PATHOBENCH_TEXTPERTURB_POSITIVE_TEXT_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "pathobench/core/types.h"
#include "pathobench/oracle/client.h"

namespace pathobench::textperturb {

enum class Perspective {
  kPathologicalDescription,
  kCausesAnalysis,
  kSymptomsIdentification,
  kDiagnosticBasis,
};

inline constexpr std::array<Perspective, 4> kAllPerspectives = {
    Perspective::kPathologicalDescription, Perspective::kCausesAnalysis,
    Perspective::kSymptomsIdentification, Perspective::kDiagnosticBasis};

std::string_view PerspectiveName(Perspective p);

struct PositiveTextSet {
  std::array<std::string, 4> texts;  // indexed by Perspective

  const std::string& operator[](Perspective p) const {
    return texts[static_cast<size_t>(p)];
  }
};

// Plain-text prompt templates with a `{caption}` placeholder, one per
// perspective, plus the negative-text refinement prompt.
struct PromptTemplates {
  std::array<std::string, 4> perspectives;
  std::string refine_negative;

  // Reads <dir>/<perspective name>.txt and <dir>/refine_negative.txt.
  static PromptTemplates Load(const std::string& dir);
};

// Replaces every `{caption}` occurrence.
std::string FillTemplate(std::string_view tmpl, std::string_view caption);

// One generate_text call per perspective. A refused or empty generation
// throws kGenerationFailed naming the perspective.
PositiveTextSet ExpandPositiveText(const PairRecord& pair,
                                   const PromptTemplates& templates,
                                   oracle::OracleClient& client, uint64_t seed);

}  // namespace pathobench::textperturb

#endif  // PATHOBENCH_TEXTPERTURB_POSITIVE_TEXT_H_
