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

#ifndef GROUNDGRAPH_POS_TAGGER_H_
#define GROUNDGRAPH_POS_TAGGER_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace groundgraph {

// Universal POS tags (subset).
enum class PosTag { kNoun, kPropn, kPron, kVerb, kAux, kAdj, kAdv, kAdp, kDet, kConj, kNum, kPart };

std::string_view PosTagName(PosTag tag);

struct TaggedToken {
  std::string text;  // lowercased, punctuation stripped
  PosTag tag;
};

class PosTagger {
 public:
  virtual ~PosTagger() = default;
  virtual std::vector<TaggedToken> Tag(std::string_view text) const = 0;
};

// Deterministic tagger: closed-class word list, then a noun lexicon (COCO
// names and common referring-expression heads), then suffix rules; anything
// left over is a noun. Capitalized unknown words after the first token are
// proper nouns.
class LexiconTagger : public PosTagger {
 public:
  LexiconTagger();

  // Later entries override earlier ones.
  void AddWord(std::string word, PosTag tag);

  // Lines of "<word> <TAG>" with TAG a universal tag name; '#' comments.
  void LoadLexicon(const std::filesystem::path& path);

  std::vector<TaggedToken> Tag(std::string_view text) const override;

 private:
  PosTag TagWord(const std::string& lower, bool capitalized, bool first) const;

  std::unordered_map<std::string, PosTag> lexicon_;
};

}  // namespace groundgraph

#endif  // GROUNDGRAPH_POS_TAGGER_H_
