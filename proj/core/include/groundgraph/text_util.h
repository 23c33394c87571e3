// Copyright 2026 The GroundGraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GROUNDGRAPH_TEXT_UTIL_H_
#define GROUNDGRAPH_TEXT_UTIL_H_

#include <string>
#include <string_view>
#include <vector>

namespace groundgraph {

std::string ToLower(std::string_view s);
std::string_view Trim(std::string_view s);

// Collapses every whitespace run to one space and trims the ends.
std::string CollapseWhitespace(std::string_view s);

// Whitespace split, lowercased, with leading/trailing ASCII punctuation
// removed from every token. Tokens that become empty are dropped.
std::vector<std::string> NormalizedTokens(std::string_view text);

// Keeps at most max_words whitespace-separated words.
std::string TruncateWords(std::string_view s, int max_words);

}  // namespace groundgraph

#endif  // GROUNDGRAPH_TEXT_UTIL_H_
