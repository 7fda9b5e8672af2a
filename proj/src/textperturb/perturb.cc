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

#include "pathobench/textperturb/perturb.h"

#include <algorithm>
#include <cctype>

#include "pathobench/core/error.h"
#include "pathobench/core/text.h"
#include "pathobench/oracle/saliency.h"

namespace pathobench::textperturb {

namespace {

// Indices of role spans, most salient first; ties go to the earlier span.
std::vector<size_t> RankBySaliency(const PairRecord& pair, SemanticRole role,
                                   size_t needed) {
  std::vector<size_t> idx = pair.SpansWithRole(role);
  if (idx.size() < needed) {
    throw Error(ErrorCode::kInsufficientPhrases,
                "pair " + pair.id + " has " + std::to_string(idx.size()) + " " +
                    std::string(RoleName(role)) + " spans, need " +
                    std::to_string(needed));
  }
  for (size_t i : idx) {
    if (!pair.phrases[i].saliency) {
      throw Error(ErrorCode::kInvalidArgument,
                  "pair " + pair.id + ": span saliency not filled");
    }
  }
  std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
    return *pair.phrases[a].saliency > *pair.phrases[b].saliency;
  });
  return idx;
}

BenchmarkInstance NewInstance(const PairRecord& pair, PerturbationType type,
                              SemanticRole role) {
  BenchmarkInstance inst;
  inst.instance_id = InstanceId(pair, type, role);
  inst.pair_id = pair.id;
  inst.image_ref = pair.image_ref;
  inst.original_text = pair.text;
  inst.perturbation = type;
  inst.role = role;
  return inst;
}

bool HasLetter(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalpha(c) || c >= 0x80;
  });
}

bool IsSingleToken(std::string_view s) {
  const auto toks = Tokenize(s);
  return toks.size() == 1 && toks[0].start == 0 && toks[0].end == s.size();
}

}  // namespace

std::string InstanceId(const PairRecord& pair, PerturbationType type,
                       SemanticRole role) {
  return pair.id + "/" + std::string(PerturbationName(type)) + "/" +
         std::string(RoleName(role));
}

BenchmarkInstance PerturbInformationLoss(const PairRecord& pair,
                                         SemanticRole role, int depth) {
  if (depth != 1 && depth != 2) {
    throw Error(ErrorCode::kInvalidArgument, "deletion depth must be 1 or 2");
  }
  const std::vector<size_t> ranked = RankBySaliency(pair, role, 2);
  BenchmarkInstance inst = NewInstance(
      pair,
      depth == 1 ? PerturbationType::kInformationLoss1
                 : PerturbationType::kInformationLoss2,
      role);
  DeletionLog log;
  std::vector<Slot> slots;
  for (int d = 0; d < depth; ++d) {
    const PhraseSpan& span = pair.phrases[ranked[d]];
    log.spans.push_back({span.start, span.end, std::string(pair.PhraseText(span)),
                         oracle::CosineFromSaliency(*span.saliency)});
    slots.push_back({span.start, span.end});
  }
  inst.perturbed_text = DeleteSpans(pair.text, slots);
  inst.edit_log = std::move(log);
  return inst;
}

BenchmarkInstance PerturbSemanticDrift(const PairRecord& pair,
                                       SemanticRole role, uint64_t seed,
                                       oracle::OracleClient& client,
                                       const SemanticDriftOptions& options) {
  struct Candidate {
    const PhraseSpan* span;
    std::vector<Token> tokens;
  };
  std::vector<Candidate> spans;
  for (size_t i : pair.SpansWithRole(role)) {
    const PhraseSpan& span = pair.phrases[i];
    Candidate c{&span, {}};
    for (const Token& t : Tokenize(pair.PhraseText(span))) {
      if (HasLetter(pair.PhraseText(span).substr(t.start, t.end - t.start))) {
        c.tokens.push_back({span.start + t.start, span.start + t.end});
      }
    }
    if (!c.tokens.empty()) spans.push_back(std::move(c));
  }
  if (spans.empty()) {
    throw Error(ErrorCode::kInsufficientPhrases,
                "pair " + pair.id + " has no substitutable " +
                    std::string(RoleName(role)) + " token");
  }

  Rng rng(seed);
  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    const Candidate& c = spans[rng.UniformInt(spans.size())];
    const Token tok = c.tokens[rng.UniformInt(c.tokens.size())];
    const uint64_t fill_seed = rng.NextU64();
    const std::string original =
        pair.text.substr(tok.start, tok.end - tok.start);
    const auto fills = client.MaskFill(pair.text, tok.start, tok.end,
                                       options.candidates, true, fill_seed);
    for (const oracle::MaskCandidate& f : fills) {
      if (!IsSingleToken(f.token) || FoldCase(f.token) == FoldCase(original)) {
        continue;
      }
      BenchmarkInstance inst =
          NewInstance(pair, PerturbationType::kSemanticDrift, role);
      inst.seed = seed;
      SubstitutionLog log{original, MatchCase(original, f.token), tok.start,
                          tok.end, c.span->start, c.span->end};
      inst.perturbed_text = pair.text.substr(0, tok.start) + log.substitute +
                            pair.text.substr(tok.end);
      inst.edit_log = std::move(log);
      return inst;
    }
  }
  throw Error(ErrorCode::kNoSubstituteFound,
              "pair " + pair.id + ": no substitute after " +
                  std::to_string(options.max_attempts) + " attempts");
}

std::array<BenchmarkInstance, 2> PerturbOrderVariation(const PairRecord& pair,
                                                       SemanticRole role) {
  std::vector<size_t> top = RankBySaliency(pair, role, 3);
  top.resize(3);
  std::sort(top.begin(), top.end());  // phrases are in text order
  PermutationLog base;
  for (size_t i : top) {
    base.slots.push_back({pair.phrases[i].start, pair.phrases[i].end});
    base.cosines.push_back(oracle::CosineFromSaliency(*pair.phrases[i].saliency));
  }
  std::array<BenchmarkInstance, 2> out;
  const std::vector<size_t>* perms[2] = {&kRotateRight, &kRotateLeft};
  for (size_t v = 0; v < 2; ++v) {
    out[v] = NewInstance(pair, PerturbationType::kOrderVariation, role);
    out[v].perturbed_text = PermuteSlots(pair.text, base.slots, *perms[v]).first;
    if (out[v].perturbed_text == pair.text) {
      throw Error(ErrorCode::kInsufficientPhrases,
                  "pair " + pair.id + ": top-3 " + std::string(RoleName(role)) +
                      " spans are identical");
    }
    PermutationLog log = base;
    log.variants = {*perms[v]};
    out[v].edit_log = std::move(log);
  }
  return out;
}

BenchmarkInstance GroupOrderVariants(
    const std::array<BenchmarkInstance, 2>& variants) {
  BenchmarkInstance grouped = variants[0];
  auto& log = std::get<PermutationLog>(grouped.edit_log);
  for (const auto& v : std::get<PermutationLog>(variants[1].edit_log).variants) {
    log.variants.push_back(v);
  }
  return grouped;
}

}  // namespace pathobench::textperturb
