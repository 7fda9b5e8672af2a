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

#include "pathobench/core/formats.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "pathobench/core/error.h"

namespace pathobench {

namespace {

using nlohmann::json;

template <typename T>
T Get(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::kSchemaError, std::string("missing key '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kSchemaError,
                std::string("bad value for '") + key + "': " + e.what());
  }
}

template <typename ParseFn>
auto ParseLines(std::string_view contents, ParseFn parse) {
  std::vector<decltype(parse(json{}))> out;
  size_t line_no = 0;
  size_t pos = 0;
  while (pos < contents.size()) {
    size_t nl = contents.find('\n', pos);
    if (nl == std::string_view::npos) nl = contents.size();
    std::string_view line = contents.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    try {
      out.push_back(parse(json::parse(line)));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kSchemaError,
                  "line " + std::to_string(line_no) + ": " + e.what());
    } catch (const Error& e) {
      throw Error(ErrorCode::kSchemaError,
                  "line " + std::to_string(line_no) + ": " + e.detail());
    }
  }
  return out;
}

}  // namespace

std::string FormatDouble(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

OrderedJson EditLogToJson(const EditLog& log) {
  OrderedJson j;
  if (const auto* del = std::get_if<DeletionLog>(&log)) {
    j["kind"] = "deletion";
    j["spans"] = OrderedJson::array();
    for (const DeletedSpan& s : del->spans) {
      OrderedJson e;
      e["start"] = s.start;
      e["end"] = s.end;
      e["text"] = s.text;
      e["cosine"] = s.cosine;
      j["spans"].push_back(e);
    }
  } else if (const auto* sub = std::get_if<SubstitutionLog>(&log)) {
    j["kind"] = "substitution";
    j["original_token"] = sub->original_token;
    j["substitute"] = sub->substitute;
    j["token_start"] = sub->token_start;
    j["token_end"] = sub->token_end;
    j["span_start"] = sub->span_start;
    j["span_end"] = sub->span_end;
  } else {
    const auto& perm = std::get<PermutationLog>(log);
    j["kind"] = "permutation";
    j["slots"] = OrderedJson::array();
    for (const Slot& s : perm.slots) j["slots"].push_back({s.start, s.end});
    j["variants"] = perm.variants;
    j["cosines"] = perm.cosines;
  }
  return j;
}

EditLog EditLogFromJson(const json& j) {
  const std::string kind = Get<std::string>(j, "kind");
  if (kind == "deletion") {
    DeletionLog log;
    for (const json& e : Get<json>(j, "spans")) {
      log.spans.push_back({Get<size_t>(e, "start"), Get<size_t>(e, "end"),
                           Get<std::string>(e, "text"), Get<double>(e, "cosine")});
    }
    return log;
  }
  if (kind == "substitution") {
    return SubstitutionLog{Get<std::string>(j, "original_token"),
                           Get<std::string>(j, "substitute"),
                           Get<size_t>(j, "token_start"),
                           Get<size_t>(j, "token_end"),
                           Get<size_t>(j, "span_start"),
                           Get<size_t>(j, "span_end")};
  }
  if (kind == "permutation") {
    PermutationLog log;
    for (const json& s : Get<json>(j, "slots")) {
      if (!s.is_array() || s.size() != 2) {
        throw Error(ErrorCode::kSchemaError, "slot must be [start, end]");
      }
      log.slots.push_back({s[0].get<size_t>(), s[1].get<size_t>()});
    }
    log.variants = Get<std::vector<std::vector<size_t>>>(j, "variants");
    log.cosines = Get<std::vector<double>>(j, "cosines");
    return log;
  }
  throw Error(ErrorCode::kSchemaError, "unknown edit_log kind '" + kind + "'");
}

OrderedJson BenchmarkInstanceToJson(const BenchmarkInstance& instance) {
  OrderedJson j;
  j["instance_id"] = instance.instance_id;
  j["pair_id"] = instance.pair_id;
  j["image_ref"] = instance.image_ref;
  j["original_text"] = instance.original_text;
  j["perturbed_text"] = instance.perturbed_text;
  j["perturbation"] = PerturbationName(instance.perturbation);
  j["role"] = RoleName(instance.role);
  j["edit_log"] = EditLogToJson(instance.edit_log);
  j["seed"] = instance.seed;
  return j;
}

BenchmarkInstance BenchmarkInstanceFromJson(const json& j) {
  BenchmarkInstance instance;
  instance.instance_id = Get<std::string>(j, "instance_id");
  instance.pair_id = Get<std::string>(j, "pair_id");
  instance.image_ref = Get<std::string>(j, "image_ref");
  instance.original_text = Get<std::string>(j, "original_text");
  instance.perturbed_text = Get<std::string>(j, "perturbed_text");
  instance.perturbation = ParsePerturbation(Get<std::string>(j, "perturbation"));
  instance.role = ParseRole(Get<std::string>(j, "role"));
  instance.edit_log = EditLogFromJson(Get<json>(j, "edit_log"));
  instance.seed = Get<uint64_t>(j, "seed");
  return instance;
}

std::string FormatBenchmark(const std::vector<BenchmarkInstance>& instances) {
  std::string out;
  for (const BenchmarkInstance& instance : instances) {
    out += BenchmarkInstanceToJson(instance).dump();
    out.push_back('\n');
  }
  return out;
}

std::vector<BenchmarkInstance> ParseBenchmark(std::string_view contents) {
  return ParseLines(contents, BenchmarkInstanceFromJson);
}

void WriteBenchmark(const std::vector<BenchmarkInstance>& instances,
                    const std::string& path) {
  WriteFile(path, FormatBenchmark(instances));
}

std::vector<BenchmarkInstance> ReadBenchmark(const std::string& path) {
  return ParseBenchmark(ReadFile(path));
}

OrderedJson PairRecordToJson(const PairRecord& pair) {
  OrderedJson j;
  j["id"] = pair.id;
  j["image_ref"] = pair.image_ref;
  j["text"] = pair.text;
  j["source"] = SourceName(pair.source);
  if (!pair.phrases.empty()) {
    j["phrases"] = OrderedJson::array();
    for (const PhraseSpan& span : pair.phrases) {
      OrderedJson p;
      p["start"] = span.start;
      p["end"] = span.end;
      p["role"] = RoleName(span.role);
      if (span.saliency) p["saliency"] = *span.saliency;
      j["phrases"].push_back(p);
    }
  }
  return j;
}

PairRecord PairRecordFromJson(const json& j) {
  PairRecord pair;
  pair.id = Get<std::string>(j, "id");
  pair.image_ref = Get<std::string>(j, "image_ref");
  pair.text = Get<std::string>(j, "text");
  pair.source = ParseSource(Get<std::string>(j, "source"));
  if (j.contains("phrases")) {
    for (const json& p : j.at("phrases")) {
      PhraseSpan span{Get<size_t>(p, "start"), Get<size_t>(p, "end"),
                      ParseRole(Get<std::string>(p, "role")), std::nullopt};
      if (p.contains("saliency")) span.saliency = Get<double>(p, "saliency");
      pair.phrases.push_back(span);
    }
  }
  ValidatePhrases(pair);
  return pair;
}

std::string FormatCorpus(const std::vector<PairRecord>& corpus) {
  std::string out;
  for (const PairRecord& pair : corpus) {
    out += PairRecordToJson(pair).dump();
    out.push_back('\n');
  }
  return out;
}

std::vector<PairRecord> ParseCorpus(std::string_view contents) {
  return ParseLines(contents, PairRecordFromJson);
}

void WriteCorpus(const std::vector<PairRecord>& corpus, const std::string& path) {
  WriteFile(path, FormatCorpus(corpus));
}

std::vector<PairRecord> ReadCorpus(const std::string& path) {
  return ParseCorpus(ReadFile(path));
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::kIoError, "short write to " + path);
}

}  // namespace pathobench
