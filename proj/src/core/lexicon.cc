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

#include "pathobench/core/lexicon.h"

#include <fstream>
#include <sstream>

#include "pathobench/core/error.h"
#include "pathobench/core/text.h"

namespace pathobench {

namespace {

std::string JoinFolded(std::string_view text, const std::vector<Token>& tokens,
                       size_t begin, size_t end) {
  std::string key;
  for (size_t i = begin; i < end; ++i) {
    if (i > begin) key.push_back(' ');
    key += FoldCase(text.substr(tokens[i].start, tokens[i].end - tokens[i].start));
  }
  return key;
}

bool OnlySpacesBetween(std::string_view text, size_t from, size_t to) {
  if (from >= to) return false;
  for (size_t i = from; i < to; ++i) {
    if (text[i] != ' ') return false;
  }
  return true;
}

}  // namespace

void RoleLexicon::Add(std::string_view term, SemanticRole role) {
  const std::vector<Token> tokens = Tokenize(term);
  if (tokens.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "lexicon term has no word tokens: '" + std::string(term) + "'");
  }
  terms_[JoinFolded(term, tokens, 0, tokens.size())] = role;
  max_tokens_ = std::max(max_tokens_, tokens.size());
}

RoleLexicon RoleLexicon::FromTsv(std::string_view contents) {
  RoleLexicon lexicon;
  std::istringstream in{std::string(contents)};
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error(ErrorCode::kSchemaError,
                  "role lexicon line " + std::to_string(line_no) +
                      ": expected term<TAB>role");
    }
    lexicon.Add(line.substr(0, tab), ParseRole(line.substr(tab + 1)));
  }
  return lexicon;
}

RoleLexicon RoleLexicon::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open lexicon " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return FromTsv(buf.str());
}

const SemanticRole* RoleLexicon::Find(const std::string& folded_key) const {
  auto it = terms_.find(folded_key);
  return it == terms_.end() ? nullptr : &it->second;
}

std::vector<PhraseSpan> SegmentText(std::string_view text,
                                    const RoleLexicon& lexicon) {
  if (text.empty()) throw Error(ErrorCode::kEmptyText, "text is empty");
  const std::vector<Token> tokens = Tokenize(text);
  std::vector<PhraseSpan> spans;
  size_t i = 0;
  while (i < tokens.size()) {
    size_t best_len = 0;
    SemanticRole best_role = SemanticRole::kEntities;
    const size_t max_len = std::min(lexicon.max_term_tokens(), tokens.size() - i);
    for (size_t len = max_len; len >= 1; --len) {
      // A multi-word term only matches across plain single-space gaps.
      bool contiguous = true;
      for (size_t k = i + 1; k < i + len && contiguous; ++k) {
        contiguous = OnlySpacesBetween(text, tokens[k - 1].end, tokens[k].start);
      }
      if (!contiguous) continue;
      if (const SemanticRole* role =
              lexicon.Find(JoinFolded(text, tokens, i, i + len))) {
        best_len = len;
        best_role = *role;
        break;
      }
    }
    if (best_len == 0) {
      ++i;
      continue;
    }
    PhraseSpan span{tokens[i].start, tokens[i + best_len - 1].end, best_role,
                    std::nullopt};
    if (!spans.empty() && spans.back().role == best_role &&
        OnlySpacesBetween(text, spans.back().end, span.start)) {
      spans.back().end = span.end;
    } else {
      spans.push_back(span);
    }
    i += best_len;
  }
  return spans;
}

}  // namespace pathobench
