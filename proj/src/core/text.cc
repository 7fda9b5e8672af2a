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

#include "pathobench/core/text.h"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "pathobench/core/error.h"

namespace pathobench {

bool IsWordByte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '-' || c == '\'' || c >= 0x80;
}

bool IsSpaceByte(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> tokens;
  size_t i = 0;
  while (i < text.size()) {
    if (!IsWordByte(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j < text.size() && IsWordByte(static_cast<unsigned char>(text[j]))) {
      ++j;
    }
    tokens.push_back({i, j});
    i = j;
  }
  return tokens;
}

std::string FoldCase(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<std::string> SplitWhitespace(std::string_view text) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsSpaceByte(static_cast<unsigned char>(text[i])))
      ++i;
    size_t j = i;
    while (j < text.size() && !IsSpaceByte(static_cast<unsigned char>(text[j])))
      ++j;
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

size_t TokenEditDistance(const std::vector<std::string>& a,
                         const std::vector<std::string>& b) {
  std::vector<size_t> prev(b.size() + 1), cur(b.size() + 1);
  std::iota(prev.begin(), prev.end(), size_t{0});
  for (size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
      const size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::string DeleteSpans(std::string_view text, std::vector<Slot> spans) {
  std::sort(spans.begin(), spans.end(),
            [](const Slot& a, const Slot& b) { return a.start < b.start; });
  // Widen each span over adjacent whitespace, then merge touching regions.
  for (size_t i = 1; i < spans.size(); ++i) {
    if (spans[i].start < spans[i - 1].end) {
      throw Error(ErrorCode::kInvalidArgument, "overlapping deletion spans");
    }
  }
  struct Region {
    Slot bounds;
    bool space_before = false;
    bool space_after = false;
  };
  std::vector<Region> regions;
  for (const Slot& s : spans) {
    if (s.start >= s.end || s.end > text.size()) {
      throw Error(ErrorCode::kSpanOutOfBounds, "deletion span out of bounds");
    }
    Region r{s, false, false};
    while (r.bounds.start > 0 &&
           IsSpaceByte(static_cast<unsigned char>(text[r.bounds.start - 1])))
      --r.bounds.start;
    while (r.bounds.end < text.size() &&
           IsSpaceByte(static_cast<unsigned char>(text[r.bounds.end])))
      ++r.bounds.end;
    r.space_before = r.bounds.start < s.start;
    r.space_after = r.bounds.end > s.end;
    if (!regions.empty() && r.bounds.start <= regions.back().bounds.end) {
      regions.back().bounds.end = r.bounds.end;
      regions.back().space_after = r.space_after;
    } else {
      regions.push_back(r);
    }
  }
  std::string out;
  out.reserve(text.size());
  size_t cursor = 0;
  for (const Region& r : regions) {
    out.append(text.substr(cursor, r.bounds.start - cursor));
    // Two words that were separated by whitespace stay separated.
    if (r.space_before && r.space_after && r.bounds.start > 0 &&
        r.bounds.end < text.size()) {
      out.push_back(' ');
    }
    cursor = r.bounds.end;
  }
  out.append(text.substr(cursor));
  return out;
}

std::pair<std::string, std::vector<Slot>> PermuteSlots(
    std::string_view text, const std::vector<Slot>& slots,
    const std::vector<size_t>& perm) {
  if (perm.size() != slots.size()) {
    throw Error(ErrorCode::kInvalidArgument, "permutation size mismatch");
  }
  std::string out;
  std::vector<Slot> new_slots;
  size_t cursor = 0;
  for (size_t i = 0; i < slots.size(); ++i) {
    const Slot& s = slots[i];
    if (s.start < cursor || s.end > text.size() || perm[i] >= slots.size()) {
      throw Error(ErrorCode::kSpanOutOfBounds, "permutation slot invalid");
    }
    out.append(text.substr(cursor, s.start - cursor));
    const Slot& src = slots[perm[i]];
    const size_t begin = out.size();
    out.append(text.substr(src.start, src.end - src.start));
    new_slots.push_back({begin, out.size()});
    cursor = s.end;
  }
  out.append(text.substr(cursor));
  return {std::move(out), std::move(new_slots)};
}

std::string ReplayDeletion(std::string_view original, const DeletionLog& log,
                           size_t depth) {
  std::vector<Slot> spans;
  for (size_t i = 0; i < depth && i < log.spans.size(); ++i) {
    spans.push_back({log.spans[i].start, log.spans[i].end});
  }
  return DeleteSpans(original, std::move(spans));
}

namespace {

struct ReplayVisitor {
  std::string_view original;

  std::vector<std::string> operator()(const DeletionLog& log) const {
    return {ReplayDeletion(original, log, log.spans.size())};
  }

  std::vector<std::string> operator()(const SubstitutionLog& log) const {
    if (log.token_end > original.size() || log.token_start > log.token_end ||
        original.substr(log.token_start, log.token_end - log.token_start) !=
            log.original_token) {
      throw Error(ErrorCode::kSchemaError,
                  "substitution log does not match original text");
    }
    std::string out(original.substr(0, log.token_start));
    out += log.substitute;
    out += original.substr(log.token_end);
    return {out};
  }

  std::vector<std::string> operator()(const PermutationLog& log) const {
    std::vector<std::string> out;
    for (const auto& perm : log.variants) {
      out.push_back(PermuteSlots(original, log.slots, perm).first);
    }
    return out;
  }
};

}  // namespace

std::vector<std::string> ReplayEditLog(std::string_view original,
                                       const EditLog& log) {
  return std::visit(ReplayVisitor{original}, log);
}

std::string MatchCase(std::string_view original, std::string word) {
  bool has_upper = false;
  bool has_lower = false;
  for (unsigned char c : original) {
    has_upper |= std::isupper(c) != 0;
    has_lower |= std::islower(c) != 0;
  }
  if (original.size() > 1 && has_upper && !has_lower) {
    for (char& c : word) {
      c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
  } else if (!original.empty() &&
             std::isupper(static_cast<unsigned char>(original[0])) &&
             !word.empty()) {
    word[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
  }
  return word;
}

}  // namespace pathobench
