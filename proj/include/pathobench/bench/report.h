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

#ifndef PATHOBENCH_BENCH_REPORT_H_
#define PATHOBENCH_BENCH_REPORT_H_

#include <string>
#include <string_view>

#include "pathobench/bench/evaluate.h"
#include "pathobench/core/formats.h"

namespace pathobench::bench {

enum class ReportFormat { kCsv, kJson, kRadarSvg };

ReportFormat ParseReportFormat(std::string_view name);  // csv | json | radar_svg

// Header, then accuracy, trials and successes rows, each perturbation-major.
// Values use shortest round-trip formatting; empty cells print `nan`.
std::string FormatGridCsv(const AccuracyGrid& grid);
AccuracyGrid ParseGridCsv(std::string_view csv);

OrderedJson GridToJson(const AccuracyGrid& grid);
AccuracyGrid GridFromJson(const OrderedJson& json);

// Nine axes: I (mean of both information-loss depths), S and O, each per
// role.
std::string FormatRadarSvg(const AccuracyGrid& grid, std::string_view title = "");
std::array<double, 9> RadarValues(const AccuracyGrid& grid);

std::string FormatReport(const AccuracyGrid& grid, ReportFormat format);

}  // namespace pathobench::bench

#endif  // PATHOBENCH_BENCH_REPORT_H_
