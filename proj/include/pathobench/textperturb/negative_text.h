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

#ifndef PATHOBENCH_TEXTPERTURB_NEGATIVE_TEXT_H_
#define PATHOBENCH_TEXTPERTURB_NEGATIVE_TEXT_H_

#include <cstdint>
#include <string>

#include "pathobench/core/types.h"
#include "pathobench/oracle/client.h"
#include "pathobench/textperturb/attribute_lexicon.h"

namespace pathobench::textperturb {

struct NegativeTextOptions {
  // Send the draft through generate_text with the plausibility-repair prompt.
  bool refine = false;
  // Never draw a replacement related to the original term by inclusion.
  bool exclude_inclusion = false;
  // Prompt with a `{caption}` placeholder; required when refine is set.
  std::string refine_template;
};

struct NegativeText {
  std::string text;
  std::string draft;  // before refinement; equals text when not refined
  RelationshipTag relationship = RelationshipTag::kParallel;
  // Inclusion negatives stay out of training batches unless asked for.
  bool excluded_by_default = false;
  std::string original_term;
  std::string replacement;
  AttributeDimension dimension = AttributeDimension::kPathologicalState;
  size_t term_start = 0;
  size_t term_end = 0;
};

// Replaces one uniformly chosen attribute-lexicon term with a uniform draw
// from the same dimension. Throws kNoLexiconMatch when no term in the text
// has an alternative; `client` may be null unless refining.
NegativeText GenerateNegativeText(const PairRecord& pair,
                                  const AttributeLexicon& lexicon,
                                  const RelationTable& relations, uint64_t seed,
                                  const NegativeTextOptions& options,
                                  oracle::OracleClient* client);

}  // namespace pathobench::textperturb

#endif  // PATHOBENCH_TEXTPERTURB_NEGATIVE_TEXT_H_
