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

#include "groundgraph/text_util.h"

#include <gtest/gtest.h>

namespace groundgraph {
namespace {

TEST(TextUtil, TrimAndCollapse) {
  EXPECT_EQ(Trim("  a b \n"), "a b");
  EXPECT_EQ(CollapseWhitespace(" a \t b\n\nc "), "a b c");
  EXPECT_EQ(CollapseWhitespace(""), "");
}

TEST(TextUtil, NormalizedTokensStripEdgePunctuation) {
  EXPECT_EQ(NormalizedTokens("The (red) Car, left!"),
            (std::vector<std::string>{"the", "red", "car", "left"}));
  EXPECT_EQ(NormalizedTokens("hot-dog ... x"), (std::vector<std::string>{"hot-dog", "x"}));
}

TEST(TextUtil, TruncateWordsCutsOnWhitespace) {
  EXPECT_EQ(TruncateWords("one  two three", 2), "one two");
  EXPECT_EQ(TruncateWords("one two", 2), "one two");
  EXPECT_EQ(TruncateWords("one two", 0), "");
  EXPECT_EQ(TruncateWords("  ", 3), "");
}

}  // namespace
}  // namespace groundgraph
