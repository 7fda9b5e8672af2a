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

#ifndef PATHOBENCH_CORE_LEXICON_H_
#define PATHOBENCH_CORE_LEXICON_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pathobench/core/types.h"

namespace pathobench {

// Case-insensitive phrase lexicon mapping multi-word terms to semantic roles.
class RoleLexicon {
 public:
  RoleLexicon() = default;

  // Later additions of the same term overwrite the earlier role.
  void Add(std::string_view term, SemanticRole role);

  // TSV with lines `term<TAB>role`; '#' starts a comment line.
  static RoleLexicon FromTsv(std::string_view contents);
  static RoleLexicon Load(const std::string& path);

  size_t size() const { return terms_.size(); }
  size_t max_term_tokens() const { return max_tokens_; }

  // Role of the exact (case-folded, whitespace-normalised) term, if known.
  const SemanticRole* Find(const std::string& folded_key) const;

  const std::map<std::string, SemanticRole>& terms() const { return terms_; }

 private:
  std::map<std::string, SemanticRole> terms_;
  size_t max_tokens_ = 0;
};

// Tags lexicon phrases in `text`. At each token the longest lexicon match
// wins; adjacent matches of the same role separated only by whitespace are
// merged into one maximal span. Unmatched tokens stay untagged.
std::vector<PhraseSpan> SegmentText(std::string_view text,
                                    const RoleLexicon& lexicon);

}  // namespace pathobench

#endif  // PATHOBENCH_CORE_LEXICON_H_
