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

#include "pathobench/bench/report.h"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pathobench/core/error.h"

namespace pathobench::bench {

namespace {

std::string ColumnName(size_t p, size_t r) {
  return std::string(PerturbationName(kAllPerturbations[p])) + "/" +
         std::string(RoleName(kAllRoles[r]));
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> out;
  size_t pos = 0;
  for (;;) {
    const size_t comma = line.find(',', pos);
    out.push_back(line.substr(pos, comma - pos));
    if (comma == std::string::npos) return out;
    pos = comma + 1;
  }
}

template <typename T>
T ParseNumber(const std::string& s, const char* row) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kSchemaError, std::string("bad value '") + s + "' in " + row + " row");
  }
  return v;
}

}  // namespace

ReportFormat ParseReportFormat(std::string_view name) {
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "json") return ReportFormat::kJson;
  if (name == "radar_svg") return ReportFormat::kRadarSvg;
  throw Error(ErrorCode::kInvalidArgument, "unknown report format '" + std::string(name) + "'");
}

std::string FormatGridCsv(const AccuracyGrid& grid) {
  std::string header, acc, n, k;
  for (size_t p = 0; p < 4; ++p) {
    for (size_t r = 0; r < 3; ++r) {
      const std::string sep = (p == 0 && r == 0) ? "" : ",";
      const AccuracyCell& cell = grid.cells[p][r];
      header += sep + ColumnName(p, r);
      acc += sep + FormatDouble(cell.accuracy());
      n += sep + std::to_string(cell.n);
      k += sep + FormatDouble(cell.k);
    }
  }
  return header + "\n" + acc + "\n" + n + "\n" + k + "\n";
}

AccuracyGrid ParseGridCsv(std::string_view csv) {
  std::istringstream in{std::string(csv)};
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) rows.push_back(SplitCsvLine(line));
  }
  if (rows.size() != 4) {
    throw Error(ErrorCode::kSchemaError, "grid CSV needs a header and three rows");
  }
  for (const auto& row : rows) {
    if (row.size() != 12) throw Error(ErrorCode::kSchemaError, "grid CSV rows need 12 cells");
  }
  AccuracyGrid grid;
  for (size_t p = 0; p < 4; ++p) {
    for (size_t r = 0; r < 3; ++r) {
      const size_t c = p * 3 + r;
      if (rows[0][c] != ColumnName(p, r)) {
        throw Error(ErrorCode::kSchemaError, "unexpected grid column '" + rows[0][c] + "'");
      }
      grid.cells[p][r].n = ParseNumber<int64_t>(rows[2][c], "trials");
      grid.cells[p][r].k = ParseNumber<double>(rows[3][c], "successes");
    }
  }
  return grid;
}

OrderedJson GridToJson(const AccuracyGrid& grid) {
  OrderedJson cells = OrderedJson::array();
  for (size_t p = 0; p < 4; ++p) {
    for (size_t r = 0; r < 3; ++r) {
      const AccuracyCell& cell = grid.cells[p][r];
      OrderedJson acc = nullptr;
      if (cell.n != 0) acc = cell.accuracy();
      cells.push_back({{"perturbation", PerturbationName(kAllPerturbations[p])},
                       {"role", RoleName(kAllRoles[r])},
                       {"n", cell.n},
                       {"k", cell.k},
                       {"accuracy", acc}});
    }
  }
  return {{"cells", cells}};
}

AccuracyGrid GridFromJson(const OrderedJson& json) {
  AccuracyGrid grid;
  try {
    const OrderedJson& cells = json.at("cells");
    if (!cells.is_array() || cells.size() != 12) {
      throw Error(ErrorCode::kSchemaError, "grid JSON needs 12 cells");
    }
    for (const OrderedJson& c : cells) {
      AccuracyCell& cell = grid.at(ParsePerturbation(c.at("perturbation").get<std::string>()),
                                   ParseRole(c.at("role").get<std::string>()));
      cell.n = c.at("n").get<int64_t>();
      cell.k = c.at("k").get<double>();
    }
  } catch (const OrderedJson::exception& e) {
    throw Error(ErrorCode::kSchemaError, std::string("grid JSON: ") + e.what());
  }
  return grid;
}

std::array<double, 9> RadarValues(const AccuracyGrid& grid) {
  std::array<double, 9> v{};
  for (size_t r = 0; r < 3; ++r) {
    v[r] = 0.5 * (grid.cells[0][r].accuracy() + grid.cells[1][r].accuracy());
    v[3 + r] = grid.cells[2][r].accuracy();
    v[6 + r] = grid.cells[3][r].accuracy();
  }
  return v;
}

std::string FormatRadarSvg(const AccuracyGrid& grid, std::string_view title) {
  constexpr double kCenter = 220.0;
  constexpr double kRadius = 160.0;
  static const char* kAxis[9] = {"I-Entities", "I-Descriptors", "I-Connections",
                                 "S-Entities", "S-Descriptors", "S-Connections",
                                 "O-Entities", "O-Descriptors", "O-Connections"};
  const std::array<double, 9> values = RadarValues(grid);
  auto point = [&](size_t i, double v) {
    const double a = -std::numbers::pi / 2 + 2 * std::numbers::pi * i / 9.0;
    return std::pair{kCenter + v * kRadius * std::cos(a), kCenter + v * kRadius * std::sin(a)};
  };
  auto polygon = [&](auto value_of, const char* cls) {
    std::string pts;
    for (size_t i = 0; i < 9; ++i) {
      const auto [x, y] = point(i, value_of(i));
      pts += (i ? " " : "") + FormatDouble(x) + "," + FormatDouble(y);
    }
    return std::string("  <polygon class=\"") + cls + "\" points=\"" + pts + "\"/>\n";
  };

  std::string svg =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"440\" height=\"460\" "
      "viewBox=\"0 0 440 460\">\n"
      "  <style>.grid{fill:none;stroke:#ccc}.axis{stroke:#999}"
      ".values{fill:rgba(40,90,200,0.25);stroke:#285ac8;stroke-width:2}"
      "text{font:11px sans-serif}</style>\n";
  if (!title.empty()) {
    svg += "  <text x=\"220\" y=\"450\" text-anchor=\"middle\">" + std::string(title) +
           "</text>\n";
  }
  for (double ring : {0.25, 0.5, 0.75, 1.0}) {
    svg += polygon([&](size_t) { return ring; }, "grid");
  }
  for (size_t i = 0; i < 9; ++i) {
    const auto [x, y] = point(i, 1.0);
    const auto [lx, ly] = point(i, 1.12);
    svg += "  <line class=\"axis\" x1=\"220\" y1=\"220\" x2=\"" + FormatDouble(x) +
           "\" y2=\"" + FormatDouble(y) + "\"/>\n";
    svg += "  <text x=\"" + FormatDouble(lx) + "\" y=\"" + FormatDouble(ly) +
           "\" text-anchor=\"middle\">" + kAxis[i] + "</text>\n";
  }
  svg += polygon([&](size_t i) { return std::isfinite(values[i]) ? values[i] : 0.0; },
                 "values");
  svg += "</svg>\n";
  return svg;
}

std::string FormatReport(const AccuracyGrid& grid, ReportFormat format) {
  switch (format) {
    case ReportFormat::kCsv: return FormatGridCsv(grid);
    case ReportFormat::kJson: return GridToJson(grid).dump(2) + "\n";
    case ReportFormat::kRadarSvg: return FormatRadarSvg(grid);
  }
  return "";
}

}  // namespace pathobench::bench
