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

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include <gtest/gtest.h>

#include "pathobench/core/error.h"
#include "pathobench/core/formats.h"
#include "pathobench/core/rng.h"
#include "pathobench/core/text.h"
#include "pathobench/oracle/client.h"
#include "pathobench/oracle/saliency.h"
#include "pathobench/oracle/transport.h"
#include "pathobench/textperturb/attribute_lexicon.h"
#include "pathobench/textperturb/negative_text.h"
#include "pathobench/textperturb/perturb.h"
#include "pathobench/textperturb/positive_text.h"

namespace pathobench::textperturb {
namespace {

const std::string kData = PATHOBENCH_DATA_DIR;

template <typename Fn>
ErrorCode CodeOf(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no pathobench::Error thrown";
  return ErrorCode::kInvalidArgument;
}

const AttributeLexicon& Lexicon() {
  static const AttributeLexicon lex = AttributeLexicon::Load(kData + "/attribute_lexicon.tsv");
  return lex;
}

const RelationTable& Relations() {
  static const RelationTable rel = RelationTable::Load(kData + "/relations.tsv");
  return rel;
}

std::unique_ptr<oracle::OracleClient> LexiconClient() {
  oracle::ToyOracleOptions o;
  o.term_groups = Lexicon().Groups();
  return oracle::OracleClient::Toy(o);
}

// "P1 x P2 y P3" with three Entities spans of given saliencies.
PairRecord ThreeSpanPair(double s1, double s2, double s3) {
  PairRecord pair;
  pair.id = "p";
  pair.image_ref = "img";
  pair.text = "glands near stroma with nuclei";
  pair.phrases = {{0, 6, SemanticRole::kEntities, s1},
                  {12, 18, SemanticRole::kEntities, s2},
                  {24, 30, SemanticRole::kEntities, s3}};
  return pair;
}

PairRecord ColonCarcinoma() {
  PairRecord p;
  p.id = "a1";
  p.image_ref = "img";
  p.text = "in colon carcinoma";
  p.phrases = {{3, 8, SemanticRole::kEntities, {}}, {9, 18, SemanticRole::kEntities, {}}};
  return p;
}

std::vector<std::string> Words(const std::string& text) {
  std::vector<std::string> out;
  for (const Token& t : Tokenize(text)) out.push_back(text.substr(t.start, t.end - t.start));
  return out;
}

TEST(InformationLossTest, DepthOneDeletesMostSalient) {
  const auto inst = PerturbInformationLoss(ThreeSpanPair(0.9, 0.5, 0.7), SemanticRole::kEntities, 1);
  EXPECT_EQ(inst.perturbed_text, "near stroma with nuclei");
  EXPECT_EQ(inst.perturbation, PerturbationType::kInformationLoss1);
  const auto& log = std::get<DeletionLog>(inst.edit_log);
  ASSERT_EQ(log.spans.size(), 1u);
  EXPECT_EQ(log.spans[0].text, "glands");
  EXPECT_DOUBLE_EQ(log.spans[0].cosine, oracle::CosineFromSaliency(0.9));
}

TEST(InformationLossTest, DepthTwoDeletesTopTwo) {
  const auto inst = PerturbInformationLoss(ThreeSpanPair(0.9, 0.5, 0.7), SemanticRole::kEntities, 2);
  EXPECT_EQ(inst.perturbed_text, "near stroma with");
  const auto& log = std::get<DeletionLog>(inst.edit_log);
  ASSERT_EQ(log.spans.size(), 2u);
  EXPECT_EQ(log.spans[0].text, "glands");
  EXPECT_EQ(log.spans[1].text, "nuclei");
  EXPECT_EQ(ReplayEditLog(inst.original_text, inst.edit_log)[0], inst.perturbed_text);
}

TEST(InformationLossTest, TooFewSpans) {
  PairRecord pair = ThreeSpanPair(0.9, 0.5, 0.7);
  pair.phrases.resize(1);
  EXPECT_EQ(CodeOf([&] { PerturbInformationLoss(pair, SemanticRole::kEntities, 1); }),
            ErrorCode::kInsufficientPhrases);
}

TEST(InformationLossTest, MissingSaliencyRejected) {
  PairRecord pair = ThreeSpanPair(0.9, 0.5, 0.7);
  pair.phrases[1].saliency.reset();
  EXPECT_EQ(CodeOf([&] { PerturbInformationLoss(pair, SemanticRole::kEntities, 1); }),
            ErrorCode::kInvalidArgument);
}

TEST(SemanticDriftTest, SubstitutesOneTokenFromTheSameGroup) {
  auto client = LexiconClient();
  for (uint64_t seed = 0; seed < 50; ++seed) {
    const auto inst = PerturbSemanticDrift(ColonCarcinoma(), SemanticRole::kEntities, seed, *client);
    const auto& log = std::get<SubstitutionLog>(inst.edit_log);
    const auto dim = Lexicon().Find(log.original_token);
    ASSERT_TRUE(dim.has_value());
    EXPECT_EQ(Lexicon().Find(log.substitute), dim) << log.substitute;
    EXPECT_EQ(TokenEditDistance(SplitWhitespace(inst.original_text),
                                SplitWhitespace(inst.perturbed_text)),
              1u);
    EXPECT_EQ(inst.seed, seed);
  }
}

TEST(SemanticDriftTest, GastricSubstitutionIsReachable) {
  auto client = LexiconClient();
  std::set<std::string> outputs;
  for (uint64_t seed = 0; seed < 300; ++seed) {
    outputs.insert(
        PerturbSemanticDrift(ColonCarcinoma(), SemanticRole::kEntities, seed, *client).perturbed_text);
  }
  EXPECT_TRUE(outputs.count("in gastric carcinoma"));
}

TEST(SemanticDriftTest, FrozenGolden) {
  auto client = LexiconClient();
  const auto inst = PerturbSemanticDrift(ColonCarcinoma(), SemanticRole::kEntities, 7, *client);
  EXPECT_EQ(inst.perturbed_text, "in colon invasive");
  EXPECT_EQ(inst.instance_id, "a1/SemanticDrift/Entities");
}

TEST(SemanticDriftTest, ExhaustedCandidates) {
  oracle::ToyOracleOptions o;
  o.term_groups = {{"colon"}};
  auto client = oracle::OracleClient::Toy(o);
  PairRecord p = ColonCarcinoma();
  p.phrases.resize(1);
  EXPECT_EQ(CodeOf([&] { PerturbSemanticDrift(p, SemanticRole::kEntities, 0, *client); }),
            ErrorCode::kNoSubstituteFound);
}

TEST(SemanticDriftTest, PreservesCapitalisation) {
  PairRecord p = ColonCarcinoma();
  p.text = "In Colon carcinoma";
  p.phrases.resize(1);
  auto client = LexiconClient();
  const auto inst = PerturbSemanticDrift(p, SemanticRole::kEntities, 3, *client);
  const auto& log = std::get<SubstitutionLog>(inst.edit_log);
  EXPECT_TRUE(std::isupper(static_cast<unsigned char>(log.substitute[0]))) << log.substitute;
}

TEST(OrderVariationTest, CyclicVariants) {
  PairRecord pair = ThreeSpanPair(0.9, 0.5, 0.7);
  const auto v = PerturbOrderVariation(pair, SemanticRole::kEntities);
  EXPECT_EQ(v[0].perturbed_text, "nuclei near glands with stroma");
  EXPECT_EQ(v[1].perturbed_text, "stroma near nuclei with glands");
}

TEST(OrderVariationTest, VariantsComposeToIdentity) {
  PairRecord pair = ThreeSpanPair(0.9, 0.5, 0.7);
  const auto v = PerturbOrderVariation(pair, SemanticRole::kEntities);
  const auto& log1 = std::get<PermutationLog>(v[0].edit_log);
  const auto& log2 = std::get<PermutationLog>(v[1].edit_log);
  // Slots of variant 1's text, then apply variant 2's permutation.
  const auto [text1, slots1] = PermuteSlots(pair.text, log1.slots, log1.variants[0]);
  EXPECT_EQ(PermuteSlots(text1, slots1, log2.variants[0]).first, pair.text);
}

TEST(OrderVariationTest, OtherRolesStayPut) {
  PairRecord pair;
  pair.id = "m";
  pair.text = "dense glands near pale stroma with atypical nuclei";
  pair.phrases = {{0, 5, SemanticRole::kDescriptors, 0.1},  {6, 12, SemanticRole::kEntities, 0.2},
                  {13, 17, SemanticRole::kConnections, 0.3}, {18, 22, SemanticRole::kDescriptors, 0.4},
                  {23, 29, SemanticRole::kEntities, 0.5},    {30, 34, SemanticRole::kConnections, 0.6},
                  {35, 43, SemanticRole::kDescriptors, 0.7}, {44, 50, SemanticRole::kEntities, 0.8}};
  for (const auto& inst : PerturbOrderVariation(pair, SemanticRole::kEntities)) {
    for (const auto& span : pair.phrases) {
      if (span.role == SemanticRole::kEntities) continue;
      EXPECT_EQ(inst.perturbed_text.substr(span.start, span.length()), pair.PhraseText(span));
    }
  }
}

TEST(OrderVariationTest, GroupedInstanceCarriesBothVariants) {
  const auto v = PerturbOrderVariation(ThreeSpanPair(0.9, 0.5, 0.7), SemanticRole::kEntities);
  const auto grouped = GroupOrderVariants(v);
  const auto replay = ReplayEditLog(grouped.original_text, grouped.edit_log);
  ASSERT_EQ(replay.size(), 2u);
  EXPECT_EQ(replay[0], v[0].perturbed_text);
  EXPECT_EQ(replay[1], v[1].perturbed_text);
  EXPECT_EQ(grouped.perturbed_text, v[0].perturbed_text);
}

TEST(OrderVariationTest, NeedsThreeSpans) {
  PairRecord pair = ThreeSpanPair(0.9, 0.5, 0.7);
  pair.phrases.pop_back();
  EXPECT_EQ(CodeOf([&] { PerturbOrderVariation(pair, SemanticRole::kEntities); }),
            ErrorCode::kInsufficientPhrases);
}

// Random captions from the role vocabulary exercise every generator.
TEST(PerturbPropertyTest, FuzzedPairs) {
  auto client = LexiconClient();
  const std::vector<std::string> words = {"glands", "stroma",   "nuclei",  "colon",
                                          "mucosa", "crypts",   "atypical", "dense",
                                          "within", "adjacent", "carcinoma", "gastric"};
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    PairRecord pair;
    pair.id = "f" + std::to_string(trial);
    pair.image_ref = "img";
    const int n = 3 + static_cast<int>(rng.UniformInt(5));
    for (int i = 0; i < n; ++i) {
      if (i) pair.text += rng.UniformInt(4) == 0 ? ", and " : " ";
      const std::string w = words[rng.UniformInt(words.size())];
      pair.phrases.push_back({pair.text.size(), pair.text.size() + w.size(),
                              SemanticRole::kEntities, rng.Uniform()});
      pair.text += w;
    }
    const auto il1 = PerturbInformationLoss(pair, SemanticRole::kEntities, 1);
    const auto il2 = PerturbInformationLoss(pair, SemanticRole::kEntities, 2);
    const auto& d1 = std::get<DeletionLog>(il1.edit_log).spans;
    const auto& d2 = std::get<DeletionLog>(il2.edit_log).spans;
    EXPECT_EQ(d1[0], d2[0]);
    for (const auto* inst : {&il1, &il2}) {
      EXPECT_EQ(ReplayEditLog(inst->original_text, inst->edit_log)[0], inst->perturbed_text);
    }
    const auto sd = PerturbSemanticDrift(pair, SemanticRole::kEntities, trial, *client);
    EXPECT_EQ(TokenEditDistance(SplitWhitespace(sd.original_text), SplitWhitespace(sd.perturbed_text)), 1u);
    EXPECT_EQ(ReplayEditLog(sd.original_text, sd.edit_log)[0], sd.perturbed_text);
    try {
      for (const auto& ov : PerturbOrderVariation(pair, SemanticRole::kEntities)) {
        auto a = Words(ov.original_text), b = Words(ov.perturbed_text);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        EXPECT_EQ(a, b);
      }
    } catch (const Error& e) {
      // Rotating three equal words leaves the caption unchanged.
      EXPECT_EQ(e.code(), ErrorCode::kInsufficientPhrases);
    }
  }
}

TEST(AttributeLexiconTest, ShippedLexiconIsValid) {
  EXPECT_NO_THROW(Lexicon().Validate());
  for (size_t d = 0; d < kNumDimensions; ++d) {
    EXPECT_FALSE(Lexicon().Terms(static_cast<AttributeDimension>(d)).empty());
  }
  EXPECT_EQ(Lexicon().Find("Colon"), AttributeDimension::kAnatomy);
  EXPECT_EQ(Lexicon().Find("carcinoma"), AttributeDimension::kPathologicalState);
}

TEST(AttributeLexiconTest, CrossDimensionDuplicateRejected) {
  EXPECT_EQ(CodeOf([] {
              AttributeLexicon::FromTsv("colon\tanatomy\nColon\tcolor\n");
            }),
            ErrorCode::kSchemaError);
}

TEST(RelationTableTest, SymmetricLookupWithParallelDefault) {
  EXPECT_EQ(Relations().Lookup("carcinoma", "adenoma"), RelationshipTag::kContrasting);
  EXPECT_EQ(Relations().Lookup("adenoma", "carcinoma"), RelationshipTag::kContrasting);
  EXPECT_EQ(Relations().Lookup("colon", "gastrointestinal"), RelationshipTag::kInclusion);
  EXPECT_EQ(Relations().Lookup("colon", "gastric"), RelationshipTag::kParallel);
}

TEST(NegativeTextTest, AllThreeRelationshipsArise) {
  std::map<std::string, NegativeText> seen;
  for (uint64_t seed = 0; seed < 400; ++seed) {
    const auto n = GenerateNegativeText(ColonCarcinoma(), Lexicon(), Relations(), seed, {}, nullptr);
    EXPECT_NE(n.text, "in colon carcinoma");
    seen.emplace(n.text, n);
  }
  ASSERT_TRUE(seen.count("in gastric carcinoma"));
  EXPECT_EQ(seen["in gastric carcinoma"].relationship, RelationshipTag::kParallel);
  ASSERT_TRUE(seen.count("in colon adenoma"));
  EXPECT_EQ(seen["in colon adenoma"].relationship, RelationshipTag::kContrasting);
  ASSERT_TRUE(seen.count("in gastrointestinal carcinoma"));
  EXPECT_EQ(seen["in gastrointestinal carcinoma"].relationship, RelationshipTag::kInclusion);
  EXPECT_TRUE(seen["in gastrointestinal carcinoma"].excluded_by_default);
  EXPECT_FALSE(seen["in gastric carcinoma"].excluded_by_default);
}

TEST(NegativeTextTest, ExcludeInclusionNeverDrawsIt) {
  NegativeTextOptions options;
  options.exclude_inclusion = true;
  for (uint64_t seed = 0; seed < 200; ++seed) {
    const auto n = GenerateNegativeText(ColonCarcinoma(), Lexicon(), Relations(), seed, options, nullptr);
    EXPECT_NE(n.relationship, RelationshipTag::kInclusion) << n.text;
  }
}

TEST(NegativeTextTest, Deterministic) {
  const auto a = GenerateNegativeText(ColonCarcinoma(), Lexicon(), Relations(), 5, {}, nullptr);
  const auto b = GenerateNegativeText(ColonCarcinoma(), Lexicon(), Relations(), 5, {}, nullptr);
  EXPECT_EQ(a.text, b.text);
}

TEST(NegativeTextTest, NoAttributeTerm) {
  PairRecord p = ColonCarcinoma();
  p.text = "nothing to swap here";
  EXPECT_EQ(CodeOf([&] { GenerateNegativeText(p, Lexicon(), Relations(), 0, {}, nullptr); }),
            ErrorCode::kNoLexiconMatch);
}

TEST(NegativeTextTest, RefineGoesThroughGenerateText) {
  auto client = oracle::OracleClient::Toy();
  NegativeTextOptions options;
  options.refine = true;
  options.refine_template = "Fix: {caption}";
  const auto n = GenerateNegativeText(ColonCarcinoma(), Lexicon(), Relations(), 2, options, client.get());
  EXPECT_EQ(n.text.rfind("Fix: " + n.draft, 0), 0u) << n.text;
  options.refine_template.clear();
  EXPECT_EQ(CodeOf([&] {
              GenerateNegativeText(ColonCarcinoma(), Lexicon(), Relations(), 2, options, client.get());
            }),
            ErrorCode::kInvalidArgument);
}

TEST(PositiveTextTest, FourDeterministicExpansions) {
  const auto templates = PromptTemplates::Load(PATHOBENCH_PROMPTS_DIR);
  auto client = oracle::OracleClient::Toy();
  PairRecord p = ColonCarcinoma();
  const auto a = ExpandPositiveText(p, templates, *client, 3);
  const auto b = ExpandPositiveText(p, templates, *client, 3);
  EXPECT_EQ(a.texts, b.texts);
  EXPECT_EQ(a[Perspective::kPathologicalDescription].rfind("Pathological description: in colon carcinoma", 0), 0u);
  EXPECT_EQ(a[Perspective::kDiagnosticBasis].rfind("Diagnostic basis: in colon carcinoma", 0), 0u);
}

TEST(PositiveTextTest, RefusalNamesThePerspective) {
  const auto templates = PromptTemplates::Load(PATHOBENCH_PROMPTS_DIR);
  oracle::ToyOracleOptions o;
  o.refuse_substrings = {"Causes analysis:"};
  auto client = oracle::OracleClient::Toy(o);
  try {
    ExpandPositiveText(ColonCarcinoma(), templates, *client, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kGenerationFailed);
    EXPECT_NE(e.detail().find("causes_analysis"), std::string::npos) << e.detail();
  }
}

TEST(PositiveTextTest, RecordedTranscriptReplays) {
  const auto templates = PromptTemplates::Load(PATHOBENCH_PROMPTS_DIR);
  oracle::OracleClient client(
      oracle::MakeTransport(std::string("replay:") + PATHOBENCH_TESTDATA_DIR +
                                "/positive_transcript.jsonl",
                            {}));
  PairRecord arch;
  arch.id = "arch-0001";
  arch.image_ref = "img";
  arch.text =
      "Colon adenocarcinoma with cribriform glands and dirty necrosis infiltrating the "
      "muscularis propria.";
  const auto out = ExpandPositiveText(arch, templates, client, 11);
  EXPECT_EQ(out[Perspective::kCausesAnalysis],
            "Causes analysis: " + arch.text +
                ". architectural and cytological features agree with this reading.");
  EXPECT_EQ(out[Perspective::kDiagnosticBasis],
            "Diagnostic basis: " + arch.text + ". no additional atypical features are described.");
}

TEST(PositiveTextTest, FillTemplateReplacesEveryPlaceholder) {
  EXPECT_EQ(FillTemplate("{caption} / {caption}", "x"), "x / x");
}

}  // namespace
}  // namespace pathobench::textperturb
