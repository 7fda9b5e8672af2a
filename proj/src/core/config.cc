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

#include "pathobench/core/config.h"

#include <charconv>
#include <sstream>

#include "pathobench/core/error.h"
#include "pathobench/core/formats.h"

namespace pathobench {

namespace {

std::string Trim(std::string_view s) {
  const size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void BadValue(const std::string& key, const std::string& value,
                           const char* type) {
  throw Error(ErrorCode::kSchemaError,
              "config key '" + key + "': '" + value + "' is not " + type);
}

}  // namespace

KeyValueConfig KeyValueConfig::Parse(std::string_view contents) {
  KeyValueConfig cfg;
  std::istringstream in{std::string(contents)};
  std::string line;
  std::string section;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    // Strip comments outside quotes.
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line.resize(i);
        break;
      }
    }
    const std::string t = Trim(line);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']' || t.size() < 3) {
        throw Error(ErrorCode::kSchemaError,
                    "config line " + std::to_string(line_no) + ": bad section header");
      }
      section = Trim(std::string_view(t).substr(1, t.size() - 2));
      continue;
    }
    const size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kSchemaError,
                  "config line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key = Trim(std::string_view(t).substr(0, eq));
    std::string value = Trim(std::string_view(t).substr(eq + 1));
    if (key.empty()) {
      throw Error(ErrorCode::kSchemaError,
                  "config line " + std::to_string(line_no) + ": empty key");
    }
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    cfg.Set(section.empty() ? key : section + "." + key, value);
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::Load(const std::string& path) {
  return Parse(ReadFile(path));
}

void KeyValueConfig::Set(const std::string& key, const std::string& value) {
  values_[key] = value;
}

std::optional<std::string> KeyValueConfig::Get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string KeyValueConfig::GetString(const std::string& key,
                                      const std::string& fallback) const {
  return Get(key).value_or(fallback);
}

double KeyValueConfig::GetDouble(const std::string& key, double fallback) const {
  const auto v = Get(key);
  if (!v) return fallback;
  double out = 0;
  const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc() || ptr != v->data() + v->size()) BadValue(key, *v, "a number");
  return out;
}

long long KeyValueConfig::GetInt(const std::string& key, long long fallback) const {
  const auto v = Get(key);
  if (!v) return fallback;
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc() || ptr != v->data() + v->size()) BadValue(key, *v, "an integer");
  return out;
}

bool KeyValueConfig::GetBool(const std::string& key, bool fallback) const {
  const auto v = Get(key);
  if (!v) return fallback;
  if (*v == "true") return true;
  if (*v == "false") return false;
  BadValue(key, *v, "true or false");
}

std::set<std::string> KeyValueConfig::UnknownKeys(
    const std::string& prefix, const std::set<std::string>& known) const {
  std::set<std::string> out;
  const std::string p = prefix + ".";
  for (const auto& [key, value] : values_) {
    if (key.rfind(p, 0) == 0 && !known.count(key.substr(p.size()))) out.insert(key);
  }
  return out;
}

}  // namespace pathobench
