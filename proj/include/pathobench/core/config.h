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

#ifndef PATHOBENCH_CORE_CONFIG_H_
#define PATHOBENCH_CORE_CONFIG_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace pathobench {

// TOML-flavoured key/value file: `key = value` lines, `#` comments and
// `[section]` headers that prefix following keys as `section.key`. Values may
// be bare or double-quoted; no arrays or inline tables.
class KeyValueConfig {
 public:
  static KeyValueConfig Parse(std::string_view contents);
  static KeyValueConfig Load(const std::string& path);

  void Set(const std::string& key, const std::string& value);
  bool Has(const std::string& key) const { return values_.count(key) != 0; }
  std::optional<std::string> Get(const std::string& key) const;

  std::string GetString(const std::string& key, const std::string& fallback) const;
  double GetDouble(const std::string& key, double fallback) const;
  long long GetInt(const std::string& key, long long fallback) const;
  bool GetBool(const std::string& key, bool fallback) const;

  // Keys under `prefix.` not listed in `known`; lets callers reject typos.
  std::set<std::string> UnknownKeys(const std::string& prefix,
                                    const std::set<std::string>& known) const;
  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace pathobench

#endif  // PATHOBENCH_CORE_CONFIG_H_
