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

#ifndef PATHOBENCH_CORE_FORMATS_H_
#define PATHOBENCH_CORE_FORMATS_H_

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "pathobench/core/types.h"

namespace pathobench {

using OrderedJson = nlohmann::ordered_json;

// Benchmark JSONL: one instance per line with keys, in this order:
// instance_id, pair_id, image_ref, original_text, perturbed_text,
// perturbation, role, edit_log, seed.
OrderedJson BenchmarkInstanceToJson(const BenchmarkInstance& instance);
BenchmarkInstance BenchmarkInstanceFromJson(const nlohmann::json& j);

OrderedJson EditLogToJson(const EditLog& log);
EditLog EditLogFromJson(const nlohmann::json& j);

std::string FormatBenchmark(const std::vector<BenchmarkInstance>& instances);
// Throws kSchemaError naming the 1-based line on malformed input.
std::vector<BenchmarkInstance> ParseBenchmark(std::string_view contents);

void WriteBenchmark(const std::vector<BenchmarkInstance>& instances,
                    const std::string& path);
std::vector<BenchmarkInstance> ReadBenchmark(const std::string& path);

// Corpus JSONL: id, image_ref, text, source, and optionally `phrases`
// (array of {start, end, role[, saliency]}).
OrderedJson PairRecordToJson(const PairRecord& pair);
PairRecord PairRecordFromJson(const nlohmann::json& j);

std::string FormatCorpus(const std::vector<PairRecord>& corpus);
std::vector<PairRecord> ParseCorpus(std::string_view contents);
void WriteCorpus(const std::vector<PairRecord>& corpus, const std::string& path);
std::vector<PairRecord> ReadCorpus(const std::string& path);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view contents);

// Shortest decimal that round-trips to the same double.
std::string FormatDouble(double v);

}  // namespace pathobench

#endif  // PATHOBENCH_CORE_FORMATS_H_
