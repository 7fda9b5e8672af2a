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

// pathobench: command-line front end. Each subcommand wraps one library
// operation and leaves its outputs plus run.json under --out.

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pathobench/bench/builder.h"
#include "pathobench/bench/evaluate.h"
#include "pathobench/bench/report.h"
#include "pathobench/bench/toy_corpus.h"
#include "pathobench/bench/zero_shot.h"
#include "pathobench/core/config.h"
#include "pathobench/core/error.h"
#include "pathobench/core/formats.h"
#include "pathobench/core/hash.h"
#include "pathobench/core/image.h"
#include "pathobench/core/lexicon.h"
#include "pathobench/core/parallel.h"
#include "pathobench/core/rng.h"
#include "pathobench/imageforge/easy_negative.h"
#include "pathobench/imageforge/miner.h"
#include "pathobench/imageforge/refine.h"
#include "pathobench/losses/encoder.h"
#include "pathobench/losses/train.h"
#include "pathobench/oracle/client.h"
#include "pathobench/oracle/image_store.h"
#include "pathobench/oracle/saliency.h"
#include "pathobench/oracle/transport.h"
#include "pathobench/textperturb/attribute_lexicon.h"
#include "pathobench/textperturb/negative_text.h"
#include "pathobench/textperturb/positive_text.h"

#ifndef PATHOBENCH_GIT_HASH
#define PATHOBENCH_GIT_HASH "unknown"
#endif
#ifndef PATHOBENCH_DATA_DIR
#define PATHOBENCH_DATA_DIR "data"
#endif
#ifndef PATHOBENCH_PROMPTS_DIR
#define PATHOBENCH_PROMPTS_DIR "prompts"
#endif

namespace pathobench {
namespace {

namespace fs = std::filesystem;

struct CommonFlags {
  std::string oracle;
  std::string out = "out";
  std::string config;
  std::string data_dir = PATHOBENCH_DATA_DIR;
  std::string prompts_dir = PATHOBENCH_PROMPTS_DIR;
  std::string record;
  uint64_t seed = 0;
  int jobs = DefaultJobs();
};

const std::set<std::string> kTopLevelKeys = {"seed", "oracle", "oracle_dim", "jobs",
                                             "paths.data_dir", "paths.prompts_dir"};
const std::set<std::string> kSections = {"miner", "refine", "loss", "train", "paths"};

void RequireFile(const std::string& path, const std::string& what) {
  if (path.empty()) throw Error(ErrorCode::kInvalidArgument, what + " path is required");
  if (!fs::exists(path)) throw Error(ErrorCode::kIoError, what + " not found: " + path);
}

std::string ParentDir(const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  return parent.empty() ? "." : parent.string();
}

// Shared state of one invocation: resolved flags, config, oracle client and
// the run.json record.
void ValidateSections(const KeyValueConfig& cfg);

class Run {
 public:
  Run(std::string command, CommonFlags flags, const CLI::App& root,
      std::vector<std::string> argv)
      : command_(std::move(command)), flags_(std::move(flags)), argv_(std::move(argv)) {
    if (!flags_.config.empty()) {
      RequireFile(flags_.config, "config file");
      config_ = KeyValueConfig::Load(flags_.config);
    }
    for (const auto& [key, value] : config_.values()) {
      const size_t dot = key.find('.');
      const bool known = kTopLevelKeys.count(key) ||
                         (dot != std::string::npos && kSections.count(key.substr(0, dot)) &&
                          key.substr(0, dot) != "paths");
      if (!known) throw Error(ErrorCode::kSchemaError, "unknown config key '" + key + "'");
    }
    ValidateSections(config_);
    // Flags win over the config file.
    auto given = [&](const char* flag) { return root.count(flag) > 0; };
    if (!given("--seed") && config_.Has("seed")) flags_.seed = config_.GetInt("seed", 0);
    if (!given("--jobs") && config_.Has("jobs")) flags_.jobs = config_.GetInt("jobs", 1);
    if (!given("--oracle")) flags_.oracle = config_.GetString("oracle", flags_.oracle);
    if (!given("--data-dir")) flags_.data_dir = config_.GetString("paths.data_dir", flags_.data_dir);
    if (!given("--prompts-dir")) {
      flags_.prompts_dir = config_.GetString("paths.prompts_dir", flags_.prompts_dir);
    }
    if (flags_.oracle.empty()) {
      const char* env = std::getenv("ORACLE_ENDPOINT");
      flags_.oracle = env != nullptr && *env != '\0' ? env : "toy";
    }
    if (flags_.jobs < 1) throw Error(ErrorCode::kInvalidArgument, "--jobs must be >= 1");
    fs::create_directories(flags_.out);
  }

  const CommonFlags& flags() const { return flags_; }
  const KeyValueConfig& config() const { return config_; }
  std::string OutPath(const std::string& name) const {
    return (fs::path(flags_.out) / name).string();
  }
  std::string DataPath(const std::string& name) const {
    return (fs::path(flags_.data_dir) / name).string();
  }

  oracle::OracleClient& client() {
    if (!client_) {
      oracle::ToyOracleOptions toy;
      const std::string attr = DataPath("attribute_lexicon.tsv");
      if (fs::exists(attr)) toy.term_groups = textperturb::AttributeLexicon::Load(attr).Groups();
      for (auto& group : bench::ToyTermGroups()) toy.term_groups.push_back(std::move(group));
      oracle::ClientOptions options;
      options.dim = static_cast<size_t>(config_.GetInt("oracle_dim", 64));
      options.transcript_path = flags_.record;
      client_ = std::make_unique<oracle::OracleClient>(
          oracle::MakeTransport(flags_.oracle, toy), options);
    }
    return *client_;
  }

  void Input(const std::string& name, const std::string& value) { inputs_[name] = value; }
  void Output(const std::string& name) { outputs_.push_back(name); }

  void Finish() {
    OrderedJson run;
    run["command"] = command_;
    run["argv"] = argv_;
    run["seed"] = flags_.seed;
    run["oracle"] = flags_.oracle;
    OrderedJson config = OrderedJson::object();
    for (const auto& [k, v] : config_.values()) config[k] = v;
    run["config"] = config;
    run["inputs"] = inputs_;
    run["outputs"] = outputs_;
    run["git_hash"] = PATHOBENCH_GIT_HASH;
    run["transcript_digest"] = HexU64(client_ ? client_->TranscriptDigest() : 0);
    WriteFile(OutPath("run.json"), run.dump(2) + "\n");
  }

 private:
  std::string command_;
  CommonFlags flags_;
  std::vector<std::string> argv_;
  KeyValueConfig config_;
  std::unique_ptr<oracle::OracleClient> client_;
  std::map<std::string, std::string> inputs_;
  std::vector<std::string> outputs_;
};

uint64_t PairSeed(uint64_t seed, const std::string& id) { return Mix64(seed ^ Fnv1a64(id)); }

std::string WriteJsonl(const std::vector<OrderedJson>& rows) {
  std::string out;
  for (const auto& row : rows) out += row.dump() + "\n";
  return out;
}

std::vector<nlohmann::json> ReadJsonl(const std::string& path) {
  std::vector<nlohmann::json> rows;
  std::istringstream in(ReadFile(path));
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      rows.push_back(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kSchemaError,
                  path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return rows;
}

losses::LossWeights WeightsFrom(const KeyValueConfig& cfg) {
  const auto unknown = cfg.UnknownKeys("loss", {"w_neg", "w_pos"});
  if (!unknown.empty()) {
    throw Error(ErrorCode::kSchemaError, "unknown config key '" + *unknown.begin() + "'");
  }
  losses::LossWeights w;
  w.w_neg = cfg.GetDouble("loss.w_neg", w.w_neg);
  w.w_pos = cfg.GetDouble("loss.w_pos", w.w_pos);
  if (!(w.w_neg >= 0) || !(w.w_pos >= 0)) {
    throw Error(ErrorCode::kInvalidArgument, "loss weights must be >= 0");
  }
  return w;
}

losses::ToyEncoderParams ParamsOrRandom(const std::string& path, size_t text_dim,
                                        uint64_t seed) {
  if (!path.empty()) {
    RequireFile(path, "encoder params");
    return losses::ToyEncoderParams::Load(path);
  }
  Rng rng(seed);
  return losses::ToyEncoderParams::Random(text_dim, 64, 32, rng);
}

// --- subcommands -----------------------------------------------------------

struct ToyCorpusArgs {
  size_t pairs = 100;
  int image_side = 32;
};

void CmdToyCorpus(Run& run, const ToyCorpusArgs& a) {
  oracle::ImageStore store;
  auto corpus = bench::MakeToyBenchCorpus(a.pairs, run.flags().seed, run.client(), store,
                                          a.image_side);
  fs::create_directories(run.OutPath("images"));
  for (PairRecord& pair : corpus) {
    const std::string rel = "images/" + pair.id + ".png";
    WritePng(store.Get(pair.image_ref), run.OutPath(rel));
    pair.image_ref = rel;
  }
  WriteCorpus(corpus, run.OutPath("corpus.jsonl"));
  run.Output("corpus.jsonl");
  run.Output("images/");
}

struct SegmentArgs {
  std::string corpus;
  std::string lexicon;
  std::string image_root;
  bool saliency = false;
};

void CmdSegment(Run& run, SegmentArgs a) {
  if (a.lexicon.empty()) a.lexicon = run.DataPath("role_lexicon.tsv");
  RequireFile(a.corpus, "corpus");
  RequireFile(a.lexicon, "role lexicon");
  run.Input("corpus", a.corpus);
  run.Input("lexicon", a.lexicon);
  const RoleLexicon lexicon = RoleLexicon::Load(a.lexicon);
  auto corpus = ReadCorpus(a.corpus);
  const oracle::ImageStore images(a.image_root.empty() ? ParentDir(a.corpus) : a.image_root);
  std::vector<PairRecord> out(corpus.size());
  ParallelFor(corpus.size(), run.flags().jobs, [&](size_t i) {
    PairRecord pair = corpus[i];
    pair.phrases = SegmentText(pair.text, lexicon);
    if (a.saliency && !pair.phrases.empty()) {
      pair = oracle::PhraseImageSaliency(pair, run.client(), images);
    }
    out[i] = std::move(pair);
  });
  WriteCorpus(out, run.OutPath("segmented.jsonl"));
  run.Output("segmented.jsonl");
}

struct BuildArgs {
  std::string corpus;
  std::string image_root;
};

void CmdBuildBench(Run& run, const BuildArgs& a) {
  RequireFile(a.corpus, "corpus");
  run.Input("corpus", a.corpus);
  const auto corpus = ReadCorpus(a.corpus);
  if (corpus.empty()) throw Error(ErrorCode::kEmptyCorpus, "corpus has no pairs: " + a.corpus);
  const oracle::ImageStore images(a.image_root.empty() ? ParentDir(a.corpus) : a.image_root);
  bench::BuildOptions options;
  options.jobs = run.flags().jobs;
  const auto result =
      bench::BuildBenchmark(corpus, run.flags().seed, run.client(), images, options);
  WriteBenchmark(result.instances, run.OutPath("benchmark.jsonl"));
  WriteFile(run.OutPath("skips.tsv"), bench::FormatSkipReport(result.skips));
  run.Output("benchmark.jsonl");
  run.Output("skips.tsv");
  std::cerr << result.instances.size() << " instances, " << result.skips.size()
            << " skipped cells\n";
}

struct ForgeTextArgs {
  std::string corpus;
  std::string attribute_lexicon;
  std::string relations;
  bool refine = false;
  bool exclude_inclusion = false;
};

void CmdForgeText(Run& run, ForgeTextArgs a) {
  if (a.attribute_lexicon.empty()) a.attribute_lexicon = run.DataPath("attribute_lexicon.tsv");
  if (a.relations.empty()) a.relations = run.DataPath("relations.tsv");
  RequireFile(a.corpus, "corpus");
  RequireFile(a.attribute_lexicon, "attribute lexicon");
  RequireFile(a.relations, "relations table");
  RequireFile(run.flags().prompts_dir, "prompts directory");
  run.Input("corpus", a.corpus);
  run.Input("attribute_lexicon", a.attribute_lexicon);
  run.Input("relations", a.relations);
  run.Input("prompts_dir", run.flags().prompts_dir);

  const auto lexicon = textperturb::AttributeLexicon::Load(a.attribute_lexicon);
  const auto relations = textperturb::RelationTable::Load(a.relations);
  const auto templates = textperturb::PromptTemplates::Load(run.flags().prompts_dir);
  const auto corpus = ReadCorpus(a.corpus);
  textperturb::NegativeTextOptions options;
  options.refine = a.refine;
  options.exclude_inclusion = a.exclude_inclusion;
  options.refine_template = templates.refine_negative;
  oracle::OracleClient& client = run.client();

  std::vector<std::optional<OrderedJson>> negatives(corpus.size());
  std::vector<OrderedJson> positives(corpus.size());
  std::vector<std::string> skips(corpus.size());
  ParallelFor(corpus.size(), run.flags().jobs, [&](size_t i) {
    const PairRecord& pair = corpus[i];
    const uint64_t seed = PairSeed(run.flags().seed, pair.id);
    try {
      const auto neg = textperturb::GenerateNegativeText(pair, lexicon, relations, seed,
                                                         options, &client);
      negatives[i] = OrderedJson{{"id", pair.id},
                                 {"text", neg.text},
                                 {"draft", neg.draft},
                                 {"original_term", neg.original_term},
                                 {"replacement", neg.replacement},
                                 {"dimension", textperturb::DimensionName(neg.dimension)},
                                 {"relationship", textperturb::RelationshipName(neg.relationship)},
                                 {"excluded_by_default", neg.excluded_by_default}};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoLexiconMatch) throw;
      skips[i] = pair.id + "\t" + e.what() + "\n";
    }
    const auto pos = textperturb::ExpandPositiveText(pair, templates, client, seed);
    OrderedJson row{{"id", pair.id}};
    for (auto p : textperturb::kAllPerspectives) {
      row[std::string(textperturb::PerspectiveName(p))] = pos[p];
    }
    positives[i] = std::move(row);
  });
  std::vector<OrderedJson> neg_rows;
  std::string skip_report = "pair_id\treason\n";
  for (size_t i = 0; i < corpus.size(); ++i) {
    if (negatives[i]) neg_rows.push_back(*negatives[i]);
    skip_report += skips[i];
  }
  WriteFile(run.OutPath("negatives.jsonl"), WriteJsonl(neg_rows));
  WriteFile(run.OutPath("positives.jsonl"), WriteJsonl(positives));
  WriteFile(run.OutPath("negatives_skipped.tsv"), skip_report);
  run.Output("negatives.jsonl");
  run.Output("positives.jsonl");
  run.Output("negatives_skipped.tsv");
}

struct ForgeImagesArgs {
  std::string corpus;
  std::string negatives;
  std::string image_root;
};

void CmdForgeImages(Run& run, const ForgeImagesArgs& a) {
  RequireFile(a.corpus, "corpus");
  RequireFile(a.negatives, "negatives");
  run.Input("corpus", a.corpus);
  run.Input("negatives", a.negatives);
  const auto corpus = ReadCorpus(a.corpus);
  std::map<std::string, std::string> corrupted;
  for (const auto& row : ReadJsonl(a.negatives)) {
    if (!row.contains("id") || !row.contains("text")) {
      throw Error(ErrorCode::kSchemaError, a.negatives + ": rows need id and text");
    }
    corrupted[row["id"].get<std::string>()] = row["text"].get<std::string>();
  }
  const oracle::ImageStore images(a.image_root.empty() ? ParentDir(a.corpus) : a.image_root);
  fs::create_directories(run.OutPath("easy_negatives"));
  std::vector<std::optional<OrderedJson>> rows(corpus.size());
  ParallelFor(corpus.size(), run.flags().jobs, [&](size_t i) {
    const PairRecord& pair = corpus[i];
    auto it = corrupted.find(pair.id);
    if (it == corrupted.end()) return;
    const uint64_t seed = PairSeed(run.flags().seed, pair.id);
    const auto neg = imageforge::GenerateEasyNegative(pair, it->second,
                                                      images.Get(pair.image_ref), seed,
                                                      run.client());
    const std::string rel = "easy_negatives/" + pair.id + ".png";
    WritePng(neg.image, run.OutPath(rel));
    rows[i] = OrderedJson{{"id", pair.id}, {"image", rel}, {"prompt", neg.prompt},
                          {"seed", neg.seed}, {"oracle", neg.oracle}};
  });
  std::vector<OrderedJson> out;
  for (auto& r : rows) {
    if (r) out.push_back(std::move(*r));
  }
  WriteFile(run.OutPath("easy_negatives.jsonl"), WriteJsonl(out));
  run.Output("easy_negatives.jsonl");
  run.Output("easy_negatives/");
}

struct MineArgs {
  std::string image;
  std::string caption;
  std::string params;
};

void CmdMineHard(Run& run, const MineArgs& a) {
  RequireFile(a.image, "image");
  if (a.caption.empty()) throw Error(ErrorCode::kInvalidArgument, "--caption is required");
  run.Input("image", a.image);
  run.Input("caption", a.caption);
  if (!a.params.empty()) run.Input("params", a.params);
  const auto cfg = imageforge::MinerConfig::FromConfig(run.config());
  const ImageTensor image = ReadPng(a.image);
  const auto text = run.client().EmbedText({a.caption});
  const losses::Vector x = Eigen::Map<const losses::Vector>(text[0].values.data(),
                                                            text[0].values.size());
  const auto params = ParamsOrRandom(a.params, x.size(), run.flags().seed);
  const auto result = imageforge::MineHardNegative(image, x, params, cfg);
  WritePng(result.image, run.OutPath("hard_negative.png"));
  WriteFile(run.OutPath("miner_trace.csv"), imageforge::FormatMinerTraceCsv(result.trace));
  OrderedJson summary{{"stop_reason", result.stop_reason},
                      {"accepted_steps", result.trace.size()}};
  WriteFile(run.OutPath("miner.json"), summary.dump(2) + "\n");
  run.Output("hard_negative.png");
  run.Output("miner_trace.csv");
  run.Output("miner.json");
}

void CmdRefinePos(Run& run, const std::string& image_path) {
  RequireFile(image_path, "image");
  run.Input("image", image_path);
  const auto cfg = imageforge::WaveletMorphConfig::FromConfig(run.config());
  const auto result = imageforge::RefinePositiveImage(ReadPng(image_path), cfg, run.client());
  WritePng(result.image, run.OutPath("refined.png"));
  OrderedJson summary{{"accepted", result.accepted},
                      {"attempts", result.attempts},
                      {"similarity", result.similarity},
                      {"gains",
                       {{"tophat", result.applied.tophat},
                        {"blackhat", result.applied.blackhat},
                        {"gradient", result.applied.gradient}}}};
  WriteFile(run.OutPath("refine.json"), summary.dump(2) + "\n");
  run.Output("refined.png");
  run.Output("refine.json");
}

struct TrainArgs {
  std::optional<int> epochs;
  std::optional<size_t> pairs;
};

void CheckTrainKeys(const KeyValueConfig& cfg) {
  const auto unknown = cfg.UnknownKeys(
      "train", {"epochs", "batch_size", "learning_rate", "pairs", "heldout", "classes"});
  if (!unknown.empty()) {
    throw Error(ErrorCode::kSchemaError, "unknown config key '" + *unknown.begin() + "'");
  }
}

// Every section is checked up front so a typo fails whichever command runs.
void ValidateSections(const KeyValueConfig& cfg) {
  imageforge::MinerConfig::FromConfig(cfg);
  imageforge::WaveletMorphConfig::FromConfig(cfg);
  WeightsFrom(cfg);
  CheckTrainKeys(cfg);
}

void CmdTrainToy(Run& run, const TrainArgs& a) {
  const KeyValueConfig& cfg = run.config();
  CheckTrainKeys(cfg);
  losses::ToyCorpusOptions corpus_options;
  corpus_options.pairs = a.pairs.value_or(cfg.GetInt("train.pairs", corpus_options.pairs));
  corpus_options.heldout = cfg.GetInt("train.heldout", corpus_options.heldout);
  corpus_options.classes = cfg.GetInt("train.classes", corpus_options.classes);
  losses::TrainOptions options;
  options.epochs = a.epochs.value_or(cfg.GetInt("train.epochs", options.epochs));
  options.batch_size = cfg.GetInt("train.batch_size", options.batch_size);
  options.learning_rate = cfg.GetDouble("train.learning_rate", options.learning_rate);
  options.weights = WeightsFrom(cfg);

  Rng rng(run.flags().seed);
  auto corpus = losses::MakeSeparableCorpus(corpus_options, rng.Split(0).NextU64());
  Rng init = rng.Split(1);
  auto params = losses::ToyEncoderParams::Random(
      corpus_options.text_dim,
      static_cast<size_t>(corpus_options.image_side * corpus_options.image_side), 32, init);
  // The full loss needs a hard negative per item; mine them against the
  // initial encoder.
  imageforge::AttachHardNegatives(corpus, params, imageforge::MinerConfig::FromConfig(cfg),
                                  run.flags().jobs);
  Rng train_rng = rng.Split(2);
  const auto trace = losses::TrainToy(corpus, params, options, train_rng);
  WriteFile(run.OutPath("trace.csv"), losses::FormatTraceCsv(trace));
  params.Save(run.OutPath("params.bin"));
  run.Output("trace.csv");
  run.Output("params.bin");
  std::cerr << "held-out retrieval " << FormatDouble(trace.front().retrieval_acc) << " -> "
            << FormatDouble(trace.back().retrieval_acc) << "\n";
}

struct EvaluateArgs {
  std::string bench;
  std::string scorer = "oracle";
  std::string params;
  std::string image_root;
};

void CmdEvaluate(Run& run, const EvaluateArgs& a) {
  RequireFile(a.bench, "benchmark");
  run.Input("bench", a.bench);
  run.Input("scorer", a.scorer);
  const auto instances = ReadBenchmark(a.bench);
  const oracle::ImageStore images(a.image_root.empty() ? ParentDir(a.bench) : a.image_root);
  losses::ToyEncoderParams params;
  std::unique_ptr<bench::Scorer> scorer;
  if (a.scorer == "oracle") {
    scorer = bench::MakeOracleScorer(run.client(), images);
  } else if (a.scorer == "toy-encoder") {
    RequireFile(a.params, "encoder params");
    run.Input("params", a.params);
    params = losses::ToyEncoderParams::Load(a.params);
    scorer = bench::MakeToyEncoderScorer(params, run.client(), images);
  } else if (a.scorer == "random") {
    scorer = bench::MakeRandomScorer(run.flags().seed);
  } else if (a.scorer == "constant") {
    scorer = bench::MakeConstantScorer();
  } else if (a.scorer == "perfect") {
    scorer = bench::MakePerfectScorer(instances);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown scorer '" + a.scorer + "'");
  }
  const auto grid = bench::Evaluate(instances, *scorer, run.flags().jobs);
  WriteFile(run.OutPath("grid.csv"), bench::FormatGridCsv(grid));
  WriteFile(run.OutPath("grid.json"), bench::GridToJson(grid).dump(2) + "\n");
  run.Output("grid.csv");
  run.Output("grid.json");
}

struct ZeroShotArgs {
  std::string manifest;
  std::string prompts;
  std::string image_root;
};

void CmdZeroShot(Run& run, const ZeroShotArgs& a) {
  RequireFile(a.manifest, "manifest");
  RequireFile(a.prompts, "prompts file");
  run.Input("manifest", a.manifest);
  run.Input("prompts", a.prompts);
  const auto manifest = bench::ParseManifest(ReadFile(a.manifest));
  const auto prompts = bench::ParsePrompts(ReadFile(a.prompts));
  const oracle::ImageStore images(a.image_root.empty() ? ParentDir(a.manifest) : a.image_root);
  const auto result = bench::ZeroShotClassify(manifest, prompts, run.client(), images);
  WriteFile(run.OutPath("zero_shot.json"), bench::ZeroShotToJson(result).dump(2) + "\n");
  run.Output("zero_shot.json");
}

struct ReportArgs {
  std::string grid;
  std::vector<double> accuracies;
  std::vector<std::string> formats = {"csv"};
  std::string title;
};

void CmdReport(Run& run, const ReportArgs& a) {
  bench::AccuracyGrid grid;
  if (!a.accuracies.empty()) {
    if (a.accuracies.size() != 12) {
      throw Error(ErrorCode::kInvalidArgument, "--accuracies needs 12 values");
    }
    std::array<double, 12> v{};
    std::copy(a.accuracies.begin(), a.accuracies.end(), v.begin());
    grid = bench::AccuracyGrid::FromAccuracies(v);
  } else {
    RequireFile(a.grid, "grid");
    run.Input("grid", a.grid);
    const std::string contents = ReadFile(a.grid);
    if (fs::path(a.grid).extension() == ".json") {
      try {
        grid = bench::GridFromJson(OrderedJson::parse(contents));
      } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::kSchemaError, a.grid + ": " + e.what());
      }
    } else {
      grid = bench::ParseGridCsv(contents);
    }
  }
  for (const std::string& name : a.formats) {
    const auto format = bench::ParseReportFormat(name);
    const std::string file = format == bench::ReportFormat::kCsv    ? "report.csv"
                             : format == bench::ReportFormat::kJson ? "report.json"
                                                                    : "report.svg";
    WriteFile(run.OutPath(file), format == bench::ReportFormat::kRadarSvg
                                     ? bench::FormatRadarSvg(grid, a.title)
                                     : bench::FormatReport(grid, format));
    run.Output(file);
  }
}

int Main(int argc, char** argv) {
  CLI::App app{"pathobench: adversarial caption benchmark and robust-training toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  CommonFlags flags;
  app.add_option("--oracle", flags.oracle,
                 "Oracle endpoint: toy | stdio:CMD | http:URL | replay:PATH "
                 "(default $ORACLE_ENDPOINT, else toy)");
  app.add_option("--seed", flags.seed, "Root seed");
  app.add_option("--out", flags.out, "Output directory")->capture_default_str();
  app.add_option("--jobs", flags.jobs, "Worker threads")->capture_default_str();
  app.add_option("--config", flags.config, "TOML-style key/value config file");
  app.add_option("--data-dir", flags.data_dir, "Lexicon directory")->capture_default_str();
  app.add_option("--prompts-dir", flags.prompts_dir, "Prompt template directory")
      ->capture_default_str();
  app.add_option("--record", flags.record, "Append every oracle exchange to this JSONL file");

  std::function<void(Run&)> action;
  auto sub = [&](const char* name, const char* help, auto fn) {
    CLI::App* s = app.add_subcommand(name, help);
    s->final_callback([&, s, name, fn] {
      action = [s, fn](Run& run) { fn(run, s); };
      (void)name;
    });
    return s;
  };

  ToyCorpusArgs toy;
  auto* s_toy = sub("toy-corpus", "Write a synthetic caption/image corpus",
                    [&](Run& r, CLI::App*) { CmdToyCorpus(r, toy); });
  s_toy->add_option("--pairs", toy.pairs, "Number of pairs")->capture_default_str();
  s_toy->add_option("--image-side", toy.image_side, "Image side in pixels")->capture_default_str();

  SegmentArgs seg;
  auto* s_seg = sub("segment", "Tag caption phrases with semantic roles",
                    [&](Run& r, CLI::App*) { CmdSegment(r, seg); });
  s_seg->add_option("--corpus", seg.corpus, "Corpus JSONL")->required();
  s_seg->add_option("--lexicon", seg.lexicon, "Role lexicon TSV (default <data-dir>/role_lexicon.tsv)");
  s_seg->add_option("--image-root", seg.image_root, "Base directory for image refs");
  s_seg->add_flag("--saliency", seg.saliency, "Also score phrase-image saliency via the oracle");

  BuildArgs build;
  auto* s_build = sub("build-bench", "Expand a segmented corpus into benchmark instances",
                      [&](Run& r, CLI::App*) { CmdBuildBench(r, build); });
  s_build->add_option("--corpus", build.corpus, "Segmented corpus JSONL")->required();
  s_build->add_option("--image-root", build.image_root, "Base directory for image refs");

  ForgeTextArgs ft;
  auto* s_ft = sub("forge-text", "Generate negative and positive caption variants",
                   [&](Run& r, CLI::App*) { CmdForgeText(r, ft); });
  s_ft->add_option("--corpus", ft.corpus, "Corpus JSONL")->required();
  s_ft->add_option("--attribute-lexicon", ft.attribute_lexicon, "Attribute lexicon TSV");
  s_ft->add_option("--relations", ft.relations, "Term relation TSV");
  s_ft->add_flag("--refine", ft.refine, "Repair negatives with generate_text");
  s_ft->add_flag("--exclude-inclusion", ft.exclude_inclusion,
                 "Never pick replacements related by inclusion");

  ForgeImagesArgs fi;
  auto* s_fi = sub("forge-images", "Generate easy negative images from corrupted captions",
                   [&](Run& r, CLI::App*) { CmdForgeImages(r, fi); });
  s_fi->add_option("--corpus", fi.corpus, "Corpus JSONL")->required();
  s_fi->add_option("--negatives", fi.negatives, "negatives.jsonl from forge-text")->required();
  s_fi->add_option("--image-root", fi.image_root, "Base directory for image refs");

  MineArgs mine;
  auto* s_mine = sub("mine-hard", "Mine a hard negative image against the toy encoder",
                     [&](Run& r, CLI::App*) { CmdMineHard(r, mine); });
  s_mine->add_option("--image", mine.image, "Input PNG")->required();
  s_mine->add_option("--caption", mine.caption, "Caption the negative should confuse")
      ->required();
  s_mine->add_option("--params", mine.params, "Toy encoder params (default: seeded random)");

  std::string refine_image;
  auto* s_ref = sub("refine-pos", "Wavelet/morphology positive image refinement",
                    [&](Run& r, CLI::App*) { CmdRefinePos(r, refine_image); });
  s_ref->add_option("--image", refine_image, "Input PNG")->required();

  TrainArgs train;
  auto* s_train = sub("train-toy", "Train the toy dual encoder with the full loss",
                      [&](Run& r, CLI::App*) { CmdTrainToy(r, train); });
  s_train->add_option("--epochs", train.epochs, "Epochs (default 20)");
  s_train->add_option("--pairs", train.pairs, "Corpus size (default 200)");

  EvaluateArgs ev;
  auto* s_ev = sub("evaluate", "Score a benchmark and emit the accuracy grid",
                   [&](Run& r, CLI::App*) { CmdEvaluate(r, ev); });
  s_ev->add_option("--bench", ev.bench, "Benchmark JSONL")->required();
  s_ev->add_option("--scorer", ev.scorer, "oracle | toy-encoder | random | constant | perfect")
      ->capture_default_str();
  s_ev->add_option("--params", ev.params, "Toy encoder params for --scorer toy-encoder");
  s_ev->add_option("--image-root", ev.image_root, "Base directory for image refs");

  ZeroShotArgs zs;
  auto* s_zs = sub("zero-shot", "Zero-shot classification metrics",
                   [&](Run& r, CLI::App*) { CmdZeroShot(r, zs); });
  s_zs->add_option("--manifest", zs.manifest, "TSV image_path<TAB>label")->required();
  s_zs->add_option("--prompts", zs.prompts, "TSV label<TAB>prompt")->required();
  s_zs->add_option("--image-root", zs.image_root, "Base directory for manifest images");

  ReportArgs rep;
  auto* s_rep = sub("report", "Render an accuracy grid as CSV, JSON or radar SVG",
                    [&](Run& r, CLI::App*) { CmdReport(r, rep); });
  auto* grid_opt = s_rep->add_option("--grid", rep.grid, "grid.csv or grid.json");
  auto* acc_opt = s_rep->add_option("--accuracies", rep.accuracies,
                                    "12 hand-entered accuracies, perturbation-major")
                      ->delimiter(',');
  grid_opt->excludes(acc_opt);
  s_rep->add_option("--format", rep.formats, "csv | json | radar_svg (repeatable)")
      ->delimiter(',');
  s_rep->add_option("--title", rep.title, "Radar chart title");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    CLI::App* chosen = app.get_subcommands().front();
    std::vector<std::string> args(argv + 1, argv + argc);
    Run run(chosen->get_name(), flags, app, args);
    action(run);
    run.Finish();
  } catch (const Error& e) {
    std::cerr << "pathobench: " << e.what() << "\n";
    return IsOracleError(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "pathobench: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace
}  // namespace pathobench

int main(int argc, char** argv) { return pathobench::Main(argc, argv); }
