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

#include "pathobench/textperturb/negative_text.h"

#include "pathobench/core/error.h"
#include "pathobench/core/rng.h"
#include "pathobench/core/text.h"
#include "pathobench/textperturb/positive_text.h"

namespace pathobench::textperturb {

namespace {

struct Occurrence {
  size_t start;
  size_t end;
  std::string term;  // folded lexicon key
  AttributeDimension dim;
  std::vector<std::string> replacements;
};

// Longest lexicon match at each token position, scanning left to right.
std::vector<Occurrence> FindOccurrences(std::string_view text,
                                        const AttributeLexicon& lexicon) {
  const std::vector<Token> tokens = Tokenize(text);
  std::vector<Occurrence> out;
  size_t i = 0;
  while (i < tokens.size()) {
    size_t matched = 0;
    const size_t limit = std::min(tokens.size(), i + lexicon.max_term_tokens());
    for (size_t j = limit; j > i; --j) {
      const std::string_view piece =
          text.substr(tokens[i].start, tokens[j - 1].end - tokens[i].start);
      // Multi-word terms only match across plain single spaces.
      bool plain = true;
      for (size_t k = i + 1; k < j; ++k) {
        plain &= tokens[k].start == tokens[k - 1].end + 1 &&
                 text[tokens[k - 1].end] == ' ';
      }
      if (!plain) continue;
      if (auto dim = lexicon.Find(piece)) {
        out.push_back({tokens[i].start, tokens[j - 1].end, FoldCase(piece),
                       *dim, {}});
        matched = j - i;
        break;
      }
    }
    i += matched ? matched : 1;
  }
  return out;
}

}  // namespace

NegativeText GenerateNegativeText(const PairRecord& pair,
                                  const AttributeLexicon& lexicon,
                                  const RelationTable& relations, uint64_t seed,
                                  const NegativeTextOptions& options,
                                  oracle::OracleClient* client) {
  if (options.refine && (client == nullptr || options.refine_template.empty())) {
    throw Error(ErrorCode::kInvalidArgument,
                "refinement needs an oracle client and a prompt template");
  }
  std::vector<Occurrence> occurrences;
  for (Occurrence& occ : FindOccurrences(pair.text, lexicon)) {
    for (const std::string& term : lexicon.Terms(occ.dim)) {
      if (term == occ.term) continue;
      if (options.exclude_inclusion &&
          relations.Lookup(occ.term, term) == RelationshipTag::kInclusion) {
        continue;
      }
      occ.replacements.push_back(term);
    }
    if (!occ.replacements.empty()) occurrences.push_back(std::move(occ));
  }
  if (occurrences.empty()) {
    throw Error(ErrorCode::kNoLexiconMatch,
                "pair " + pair.id + " contains no replaceable attribute term");
  }

  Rng rng(seed);
  const Occurrence& occ = occurrences[rng.UniformInt(occurrences.size())];
  const std::string& pick = occ.replacements[rng.UniformInt(occ.replacements.size())];

  NegativeText out;
  out.original_term = pair.text.substr(occ.start, occ.end - occ.start);
  out.replacement = MatchCase(out.original_term, pick);
  out.dimension = occ.dim;
  out.term_start = occ.start;
  out.term_end = occ.end;
  out.relationship = relations.Lookup(occ.term, pick);
  out.excluded_by_default = out.relationship == RelationshipTag::kInclusion;
  out.draft = pair.text.substr(0, occ.start) + out.replacement +
              pair.text.substr(occ.end);
  out.text = out.draft;
  if (options.refine) {
    out.text = client->GenerateText(FillTemplate(options.refine_template, out.draft),
                                    rng.NextU64());
    if (out.text.empty()) {
      throw Error(ErrorCode::kGenerationFailed, "negative text refinement was empty");
    }
  }
  return out;
}

}  // namespace pathobench::textperturb
