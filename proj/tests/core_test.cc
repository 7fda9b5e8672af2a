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

#include <cmath>
#include <filesystem>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "pathobench/core/config.h"
#include "pathobench/core/error.h"
#include "pathobench/core/formats.h"
#include "pathobench/core/hash.h"
#include "pathobench/core/image.h"
#include "pathobench/core/lexicon.h"
#include "pathobench/core/parallel.h"
#include "pathobench/core/rng.h"
#include "pathobench/core/text.h"
#include "pathobench/core/types.h"

namespace pathobench {
namespace {

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

RoleLexicon ShippedLexicon() {
  return RoleLexicon::Load(std::string(PATHOBENCH_DATA_DIR) + "/role_lexicon.tsv");
}

TEST(RngTest, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.NextU64(), b.NextU64());
}

TEST(RngTest, SplitDoesNotAdvanceParent) {
  Rng a(7), b(7);
  Rng child = a.Split(3);
  (void)child.NextU64();
  EXPECT_EQ(a.NextU64(), b.NextU64());
  EXPECT_NE(a.Split(1).NextU64(), a.Split(2).NextU64());
}

TEST(RngTest, UniformIntInRange) {
  Rng r(1);
  std::vector<int> hist(5, 0);
  for (int i = 0; i < 5000; ++i) {
    const uint64_t v = r.UniformInt(5);
    ASSERT_LT(v, 5u);
    ++hist[v];
  }
  for (int h : hist) EXPECT_GT(h, 800);
}

TEST(RngTest, NormalMoments) {
  Rng r(9);
  double sum = 0, sq = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double x = r.Normal();
    sum += x;
    sq += x * x;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.03);
  EXPECT_NEAR(sq / n, 1.0, 0.05);
}

TEST(TextTest, TokenizeKeepsWordsOnly) {
  const std::string text = "Colon, carcinoma.";
  const auto tokens = Tokenize(text);
  std::vector<std::string> words;
  for (const Token& t : tokens) words.push_back(text.substr(t.start, t.end - t.start));
  EXPECT_EQ(words, (std::vector<std::string>{"Colon", "carcinoma"}));
}

TEST(TextTest, TokenEditDistance) {
  using V = std::vector<std::string>;
  EXPECT_EQ(TokenEditDistance(V{"a", "b", "c"}, V{"a", "x", "c"}), 1u);
  EXPECT_EQ(TokenEditDistance(V{"a", "b", "c"}, V{"a", "b", "c"}), 0u);
  EXPECT_EQ(TokenEditDistance(V{}, V{"a", "b"}), 2u);
  EXPECT_EQ(TokenEditDistance(V{"a", "b"}, V{"b", "a"}), 2u);
}

TEST(TextTest, DeleteSpansCollapsesWhitespace) {
  const std::string text = "in colon carcinoma with gland fusion";
  EXPECT_EQ(DeleteSpans(text, {{3, 8}}), "in carcinoma with gland fusion");
  EXPECT_EQ(DeleteSpans(text, {{0, 2}}), "colon carcinoma with gland fusion");
  EXPECT_EQ(DeleteSpans(text, {{30, 36}}), "in colon carcinoma with gland");
  EXPECT_EQ(DeleteSpans(text, {{3, 8}, {9, 18}}), "in with gland fusion");
}

TEST(TextTest, DeleteSpansRejectsBadInput) {
  EXPECT_EQ(CodeOf([] { DeleteSpans("abc def", {{2, 9}}); }), ErrorCode::kSpanOutOfBounds);
  EXPECT_EQ(CodeOf([] { DeleteSpans("abc def", {{0, 3}, {1, 5}}); }),
            ErrorCode::kInvalidArgument);
}

TEST(TextTest, PermuteSlotsRotates) {
  const std::string text = "A x B y C";
  const std::vector<Slot> slots = {{0, 1}, {4, 5}, {8, 9}};
  EXPECT_EQ(PermuteSlots(text, slots, {2, 0, 1}).first, "C x A y B");
  EXPECT_EQ(PermuteSlots(text, slots, {1, 2, 0}).first, "B x C y A");
}

TEST(TextTest, PermuteSlotsHandlesUnequalLengths) {
  const std::string text = "glands near a stroma";
  const auto [out, moved] = PermuteSlots(text, {{0, 6}, {12, 13}}, {1, 0});
  EXPECT_EQ(out, "a near glands stroma");
  EXPECT_EQ(out.substr(moved[1].start, moved[1].end - moved[1].start), "glands");
}

TEST(TextTest, MatchCase) {
  EXPECT_EQ(MatchCase("Colon", "gastric"), "Gastric");
  EXPECT_EQ(MatchCase("HE", "pas"), "PAS");
  EXPECT_EQ(MatchCase("colon", "gastric"), "gastric");
}

TEST(TextTest, ReplayEditLogAllKinds) {
  const std::string text = "in colon carcinoma";
  SubstitutionLog sub{"colon", "gastric", 3, 8, 3, 8};
  EXPECT_EQ(ReplayEditLog(text, sub), std::vector<std::string>{"in gastric carcinoma"});
  DeletionLog del{{{3, 8, "colon", 0.4}}};
  EXPECT_EQ(ReplayEditLog(text, del), std::vector<std::string>{"in carcinoma"});
  PermutationLog perm{{{0, 2}, {3, 8}, {9, 18}}, {{2, 0, 1}, {1, 2, 0}}, {0.1, 0.2, 0.3}};
  EXPECT_EQ(ReplayEditLog(text, perm),
            (std::vector<std::string>{"carcinoma in colon", "colon carcinoma in"}));
  SubstitutionLog stale{"liver", "gastric", 3, 8, 3, 8};
  EXPECT_EQ(CodeOf([&] { ReplayEditLog(text, stale); }), ErrorCode::kSchemaError);
}

TEST(SegmentTest, DirectLexiconMatch) {
  RoleLexicon lex;
  lex.Add("colon", SemanticRole::kEntities);
  lex.Add("carcinoma", SemanticRole::kEntities);
  lex.Add("gland fusion", SemanticRole::kDescriptors);
  const auto spans = SegmentText("colon carcinoma with gland fusion", lex);
  ASSERT_EQ(spans.size(), 2u);
  EXPECT_EQ(spans[0], (PhraseSpan{0, 15, SemanticRole::kEntities, {}}));
  EXPECT_EQ(spans[1], (PhraseSpan{21, 33, SemanticRole::kDescriptors, {}}));
}

TEST(SegmentTest, EmptyTextRejected) {
  EXPECT_EQ(CodeOf([] { SegmentText("", RoleLexicon()); }), ErrorCode::kEmptyText);
}

TEST(SegmentTest, LongestMatchWinsAndCaseIsFolded) {
  RoleLexicon lex;
  lex.Add("lymph", SemanticRole::kDescriptors);
  lex.Add("lymph node", SemanticRole::kEntities);
  const auto spans = SegmentText("Lymph  Node involved", lex);
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(spans[0].role, SemanticRole::kEntities);
  EXPECT_EQ(spans[0].start, 0u);
  EXPECT_EQ(spans[0].end, 11u);
}

TEST(SegmentTest, ShippedLexiconMatchesGolden) {
  const RoleLexicon lex = ShippedLexicon();
  std::istringstream in(ReadFile(std::string(PATHOBENCH_TESTDATA_DIR) + "/segmentation_golden.jsonl"));
  std::string line;
  int cases = 0;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    const std::string text = j["text"];
    std::vector<PhraseSpan> expected;
    for (const auto& s : j["spans"]) {
      expected.push_back({s[0].get<size_t>(), s[1].get<size_t>(),
                          ParseRole(s[2].get<std::string>()), {}});
    }
    EXPECT_EQ(SegmentText(text, lex), expected) << text;
    ++cases;
  }
  EXPECT_EQ(cases, 10);
}

// Spans are ordered, disjoint and in bounds, and gaps plus spans rebuild the
// text.
TEST(SegmentTest, SpansTileTheText) {
  const RoleLexicon lex = ShippedLexicon();
  std::vector<std::string> terms;
  for (const auto& [term, role] : lex.terms()) terms.push_back(term);
  const std::vector<std::string> fillers = {"the", "of", ",", "and", "a", "."};
  Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    std::string text;
    const int n = 1 + static_cast<int>(rng.UniformInt(12));
    for (int i = 0; i < n; ++i) {
      if (i) text += ' ';
      text += rng.UniformInt(3) == 0 ? fillers[rng.UniformInt(fillers.size())]
                                     : terms[rng.UniformInt(terms.size())];
    }
    PairRecord pair;
    pair.text = text;
    pair.phrases = SegmentText(text, lex);
    ASSERT_NO_THROW(ValidatePhrases(pair)) << text;
    std::string rebuilt;
    size_t cursor = 0;
    for (const PhraseSpan& s : pair.phrases) {
      rebuilt += text.substr(cursor, s.start - cursor);
      rebuilt += pair.PhraseText(s);
      cursor = s.end;
    }
    rebuilt += text.substr(cursor);
    EXPECT_EQ(rebuilt, text);
  }
}

TEST(LexiconTest, RejectsUnknownRole) {
  EXPECT_EQ(CodeOf([] { RoleLexicon::FromTsv("colon\tOrgan\n"); }), ErrorCode::kSchemaError);
}

TEST(LexiconTest, MissingFileIsIoError) {
  EXPECT_EQ(CodeOf([] { RoleLexicon::Load("/nonexistent/lexicon.tsv"); }),
            ErrorCode::kIoError);
}

BenchmarkInstance SampleInstance(int kind) {
  BenchmarkInstance inst;
  inst.instance_id = "p1/x/Entities";
  inst.pair_id = "p1";
  inst.image_ref = "images/p1.png";
  inst.original_text = "in colon carcinoma";
  inst.role = SemanticRole::kEntities;
  inst.seed = 0xfeedfacecafebeefULL;
  switch (kind) {
    case 0:
      inst.perturbation = PerturbationType::kInformationLoss2;
      inst.edit_log = DeletionLog{{{3, 8, "colon", 0.25}, {9, 18, "carcinoma", -0.125}}};
      break;
    case 1:
      inst.perturbation = PerturbationType::kSemanticDrift;
      inst.edit_log = SubstitutionLog{"colon", "gastric", 3, 8, 3, 8};
      break;
    default:
      inst.perturbation = PerturbationType::kOrderVariation;
      inst.edit_log = PermutationLog{{{0, 2}, {3, 8}, {9, 18}}, {{2, 0, 1}}, {0.1, 0.2, 0.3}};
      break;
  }
  inst.perturbed_text = ReplayEditLog(inst.original_text, inst.edit_log)[0];
  return inst;
}

TEST(FormatsTest, BenchmarkRoundTrip) {
  const std::vector<BenchmarkInstance> instances = {SampleInstance(0), SampleInstance(1),
                                                    SampleInstance(2)};
  const std::string text = FormatBenchmark(instances);
  EXPECT_EQ(ParseBenchmark(text), instances);
  EXPECT_EQ(FormatBenchmark(ParseBenchmark(text)), text);
}

TEST(FormatsTest, FileRoundTrip) {
  const auto path = (std::filesystem::temp_directory_path() / "pathobench_core_rt.jsonl").string();
  const std::vector<BenchmarkInstance> instances = {SampleInstance(1)};
  WriteBenchmark(instances, path);
  EXPECT_EQ(ReadBenchmark(path), instances);
  std::filesystem::remove(path);
}

TEST(FormatsTest, MissingPerturbedTextIsSchemaError) {
  auto j = BenchmarkInstanceToJson(SampleInstance(1));
  j.erase("perturbed_text");
  EXPECT_EQ(CodeOf([&] { ParseBenchmark(j.dump() + "\n"); }), ErrorCode::kSchemaError);
}

TEST(FormatsTest, UnknownEditLogKindIsSchemaError) {
  auto j = BenchmarkInstanceToJson(SampleInstance(1));
  j["edit_log"]["kind"] = "swap";
  EXPECT_EQ(CodeOf([&] { ParseBenchmark(j.dump() + "\n"); }), ErrorCode::kSchemaError);
}

TEST(FormatsTest, CorpusRoundTrip) {
  PairRecord pair;
  pair.id = "arch-1";
  pair.image_ref = "a.png";
  pair.text = "colon carcinoma with gland fusion";
  pair.source = CorpusSource::kPubmed;
  pair.phrases = {{0, 15, SemanticRole::kEntities, 0.75}, {21, 33, SemanticRole::kDescriptors, {}}};
  const std::vector<PairRecord> corpus = {pair};
  EXPECT_EQ(ParseCorpus(FormatCorpus(corpus)), corpus);
}

TEST(FormatsTest, FormatDoubleIsShortestRoundTrip) {
  EXPECT_EQ(FormatDouble(0.7072), "0.7072");
  EXPECT_EQ(FormatDouble(1.0), "1");
  EXPECT_EQ(FormatDouble(0.1 + 0.2), "0.30000000000000004");
  for (double v : {1e-300, 3.14159, -2.5e10}) {
    EXPECT_EQ(std::stod(FormatDouble(v)), v);
  }
}

TEST(ValidateTest, RejectsOverlapAndOutOfBounds) {
  PairRecord pair;
  pair.text = "colon carcinoma";
  pair.phrases = {{0, 9, SemanticRole::kEntities, {}}, {6, 15, SemanticRole::kEntities, {}}};
  EXPECT_EQ(CodeOf([&] { ValidatePhrases(pair); }), ErrorCode::kSchemaError);
  pair.phrases = {{0, 20, SemanticRole::kEntities, {}}};
  EXPECT_EQ(CodeOf([&] { ValidatePhrases(pair); }), ErrorCode::kSchemaError);
}

TEST(ImageTest, PngRoundTripIsExactOnByteGrid) {
  ImageTensor img(5, 7, 3);
  Rng rng(3);
  for (double& v : img.values()) v = static_cast<double>(rng.UniformInt(256)) / 255.0;
  EXPECT_EQ(DecodePng(EncodePng(img)), img);
}

TEST(ImageTest, DecodeGarbageIsDecodeError) {
  EXPECT_EQ(CodeOf([] { DecodePng("not a png"); }), ErrorCode::kDecodeError);
}

TEST(ImageTest, Base64RoundTrip) {
  for (const std::string& s : std::vector<std::string>{"", "f", "fo", "foo", "foob", std::string("\0\xff\x10", 3)}) {
    EXPECT_EQ(Base64Decode(Base64Encode(s)), s);
  }
  EXPECT_EQ(Base64Encode("foobar"), "Zm9vYmFy");
}

TEST(ConfigTest, SectionsAndTypes) {
  const auto cfg = KeyValueConfig::Parse(
      "# comment\nseed = 7\n[miner]\nlambda = 0.5\nname = \"x y\"\n[refine]\nenabled = true\n");
  EXPECT_EQ(cfg.GetInt("seed", 0), 7);
  EXPECT_DOUBLE_EQ(cfg.GetDouble("miner.lambda", 0), 0.5);
  EXPECT_EQ(cfg.GetString("miner.name", ""), "x y");
  EXPECT_TRUE(cfg.GetBool("refine.enabled", false));
  EXPECT_EQ(cfg.UnknownKeys("miner", {"lambda"}), std::set<std::string>{"miner.name"});
}

TEST(ConfigTest, BadValuesRejected) {
  EXPECT_EQ(CodeOf([] { KeyValueConfig::Parse("just text\n"); }), ErrorCode::kSchemaError);
  const auto cfg = KeyValueConfig::Parse("x = abc\n");
  EXPECT_EQ(CodeOf([&] { cfg.GetDouble("x", 0); }), ErrorCode::kSchemaError);
}

TEST(ParallelTest, VisitsEveryIndexOnceAndRethrowsFirstError) {
  std::vector<std::atomic<int>> seen(1000);
  ParallelFor(seen.size(), 4, [&](size_t i) { ++seen[i]; });
  for (auto& s : seen) EXPECT_EQ(s.load(), 1);
  try {
    ParallelFor(100, 4, [](size_t i) {
      if (i == 17 || i == 60) throw Error(ErrorCode::kInvalidArgument, std::to_string(i));
    });
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.detail(), "17");
  }
}

TEST(TypesTest, NamesRoundTrip) {
  for (auto r : kAllRoles) EXPECT_EQ(ParseRole(RoleName(r)), r);
  for (auto p : kAllPerturbations) EXPECT_EQ(ParsePerturbation(PerturbationName(p)), p);
  EXPECT_EQ(CodeOf([] { ParseRole("Verbs"); }), ErrorCode::kSchemaError);
}

TEST(HashTest, Fnv1aKnownValue) {
  EXPECT_EQ(Fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(Fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

}  // namespace
}  // namespace pathobench
