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

#include "pathobench/textperturb/positive_text.h"

#include "pathobench/core/error.h"
#include "pathobench/core/formats.h"
#include "pathobench/core/hash.h"

namespace pathobench::textperturb {

std::string_view PerspectiveName(Perspective p) {
  switch (p) {
    case Perspective::kPathologicalDescription: return "pathological_description";
    case Perspective::kCausesAnalysis: return "causes_analysis";
    case Perspective::kSymptomsIdentification: return "symptoms_identification";
    case Perspective::kDiagnosticBasis: return "diagnostic_basis";
  }
  return "";
}

PromptTemplates PromptTemplates::Load(const std::string& dir) {
  PromptTemplates t;
  for (Perspective p : kAllPerspectives) {
    t.perspectives[static_cast<size_t>(p)] =
        ReadFile(dir + "/" + std::string(PerspectiveName(p)) + ".txt");
  }
  t.refine_negative = ReadFile(dir + "/refine_negative.txt");
  return t;
}

std::string FillTemplate(std::string_view tmpl, std::string_view caption) {
  static constexpr std::string_view kSlot = "{caption}";
  std::string out;
  size_t pos = 0;
  for (;;) {
    const size_t hit = tmpl.find(kSlot, pos);
    out.append(tmpl.substr(pos, hit - pos));
    if (hit == std::string_view::npos) break;
    out.append(caption);
    pos = hit + kSlot.size();
  }
  return out;
}

PositiveTextSet ExpandPositiveText(const PairRecord& pair,
                                   const PromptTemplates& templates,
                                   oracle::OracleClient& client, uint64_t seed) {
  PositiveTextSet set;
  for (Perspective p : kAllPerspectives) {
    const size_t k = static_cast<size_t>(p);
    const std::string prompt = FillTemplate(templates.perspectives[k], pair.text);
    const std::string name(PerspectiveName(p));
    std::string text;
    try {
      text = client.GenerateText(prompt, Mix64(seed ^ Fnv1a64(name)));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kGenerationRefused) throw;
      throw Error(ErrorCode::kGenerationFailed, name + ": " + e.what());
    }
    if (text.empty()) {
      throw Error(ErrorCode::kGenerationFailed, name + ": empty response");
    }
    set.texts[k] = std::move(text);
  }
  return set;
}

}  // namespace pathobench::textperturb
