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

#ifndef PATHOBENCH_CORE_TEXT_H_
#define PATHOBENCH_CORE_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

#include "pathobench/core/types.h"

namespace pathobench {

// A word token: maximal run of ASCII alphanumerics, '-', '\'' or any byte
// >= 0x80 (so UTF-8 letters stay inside words).
struct Token {
  size_t start = 0;
  size_t end = 0;
};

bool IsWordByte(unsigned char c);
bool IsSpaceByte(unsigned char c);

std::vector<Token> Tokenize(std::string_view text);

// ASCII case folding; other bytes untouched.
std::string FoldCase(std::string_view text);

// Whitespace-separated tokens, used for token-level diffs.
std::vector<std::string> SplitWhitespace(std::string_view text);

// Copies the capitalisation of `original` onto `word`: ALL CAPS stays all
// caps, a leading capital stays leading; anything else leaves `word` alone.
std::string MatchCase(std::string_view original, std::string word);

// Levenshtein distance over token sequences.
size_t TokenEditDistance(const std::vector<std::string>& a,
                         const std::vector<std::string>& b);

// Removes the given spans (any order, non-overlapping) together with the
// whitespace around them. A removed region that had whitespace on both
// sides and survives between content leaves exactly one space behind.
std::string DeleteSpans(std::string_view text, std::vector<Slot> spans);

// Rewrites slot i with the original text of slot perm[i]; all other bytes
// are untouched. Returns the new text and the new slot boundaries.
std::pair<std::string, std::vector<Slot>> PermuteSlots(
    std::string_view text, const std::vector<Slot>& slots,
    const std::vector<size_t>& perm);

// Variant texts encoded by an edit log, primary variant first.
std::vector<std::string> ReplayEditLog(std::string_view original,
                                       const EditLog& log);

// Depth-k prefix of a deletion log.
std::string ReplayDeletion(std::string_view original, const DeletionLog& log,
                           size_t depth);

}  // namespace pathobench

#endif  // PATHOBENCH_CORE_TEXT_H_
