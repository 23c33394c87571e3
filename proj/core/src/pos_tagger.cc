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

#include "groundgraph/pos_tagger.h"

#include <cctype>
#include <fstream>
#include <sstream>

#include "groundgraph/error.h"
#include "groundgraph/text_util.h"

namespace groundgraph {
namespace {

constexpr std::string_view kDeterminers =
    "the a an this that these those each every some any no another both either "
    "neither all his her its their my your our whose";
constexpr std::string_view kAdpositions =
    "on in at of to from with without by near behind beside besides between under "
    "over above below next into onto across along around against toward towards "
    "through beneath underneath inside outside among for about after before off "
    "up down like than via upon within beyond past";
constexpr std::string_view kConjunctions = "and or but nor so yet while whereas";
constexpr std::string_view kPronouns =
    "it he she they them him one ones someone something anything anyone somebody "
    "who whom which what i you we me us itself himself herself themselves yourself "
    "everyone everything nobody nothing";
constexpr std::string_view kAuxiliaries =
    "is are was were be been being am has have had do does did can could will "
    "would should may might must";
constexpr std::string_view kVerbs =
    "wear wears hold holds sit sits stand stands look looks face faces ride rides "
    "eat eats carry carries play plays walk walks lie lies lay hang hangs touch "
    "touches watch watches cut throw throws swing swings catch catches get gets go "
    "goes run runs stare stares smile smiles point points seen shown made taken "
    "appears appear seems seem contains contain show shows";
constexpr std::string_view kAdjectives =
    "left right top bottom middle center centre front back far closest nearest "
    "farthest furthest first second third fourth fifth last upper lower big bigger "
    "biggest small smaller smallest large larger largest little tall taller tallest "
    "short shorter long longer old older young younger new whole half full empty "
    "open closed dark light bright white black red blue green yellow orange purple "
    "pink brown gray grey silver gold golden striped plaid wooden metal plastic "
    "other same only partial visible blurry main leftmost rightmost topmost "
    "bottommost center-left center-right far-left far-right";
constexpr std::string_view kAdverbs =
    "very partially mostly just also not almost slightly there here away out "
    "closer further farther barely only";
constexpr std::string_view kNumbers = "two three four five six seven eight nine ten";

// COCO category words plus frequent heads of referring expressions.
constexpr std::string_view kNouns =
    "person bicycle car motorcycle airplane bus train truck boat traffic light fire "
    "hydrant stop sign parking meter bench bird cat dog horse sheep cow elephant bear "
    "zebra giraffe backpack umbrella handbag tie suitcase frisbee skis snowboard "
    "sports ball kite baseball bat glove skateboard surfboard tennis racket bottle "
    "wine glass cup fork knife spoon bowl banana apple sandwich orange broccoli "
    "carrot hot pizza donut cake chair couch plant bed dining table toilet tv laptop "
    "mouse remote keyboard phone microwave oven toaster sink refrigerator book clock "
    "vase scissors teddy drier toothbrush man woman men women guy girl boy lady "
    "people kid kids child children baby player mom dad mother father thing shirt "
    "jacket building tree sky grass road street window door wall floor ceiling "
    "painting railing clothing ring wing king string picture screen bike plate "
    "food shelf box bag hat cap head hand arm leg face hair side edge corner part "
    "piece half animal vehicle sheep slice background foreground";

void AddList(std::unordered_map<std::string, PosTag>& lexicon, std::string_view words,
             PosTag tag) {
  std::istringstream in{std::string(words)};
  std::string w;
  while (in >> w) lexicon[w] = tag;
}

bool EndsWith(const std::string& s, std::string_view suffix) {
  return s.size() > suffix.size() + 1 &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool AllDigits(const std::string& s) {
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return !s.empty();
}

PosTag ParseTag(std::string_view name) {
  static const std::pair<std::string_view, PosTag> kNames[] = {
      {"NOUN", PosTag::kNoun}, {"PROPN", PosTag::kPropn}, {"PRON", PosTag::kPron},
      {"VERB", PosTag::kVerb}, {"AUX", PosTag::kAux},     {"ADJ", PosTag::kAdj},
      {"ADV", PosTag::kAdv},   {"ADP", PosTag::kAdp},     {"DET", PosTag::kDet},
      {"CONJ", PosTag::kConj}, {"NUM", PosTag::kNum},     {"PART", PosTag::kPart}};
  for (const auto& [n, t] : kNames) {
    if (n == name) return t;
  }
  throw Error(ErrorCode::kSchema, "unknown POS tag '" + std::string(name) + "'");
}

}  // namespace

std::string_view PosTagName(PosTag tag) {
  switch (tag) {
    case PosTag::kNoun: return "NOUN";
    case PosTag::kPropn: return "PROPN";
    case PosTag::kPron: return "PRON";
    case PosTag::kVerb: return "VERB";
    case PosTag::kAux: return "AUX";
    case PosTag::kAdj: return "ADJ";
    case PosTag::kAdv: return "ADV";
    case PosTag::kAdp: return "ADP";
    case PosTag::kDet: return "DET";
    case PosTag::kConj: return "CONJ";
    case PosTag::kNum: return "NUM";
    case PosTag::kPart: return "PART";
  }
  return "";
}

LexiconTagger::LexiconTagger() {
  AddList(lexicon_, kNouns, PosTag::kNoun);
  AddList(lexicon_, kNumbers, PosTag::kNum);
  AddList(lexicon_, kAdverbs, PosTag::kAdv);
  AddList(lexicon_, kAdjectives, PosTag::kAdj);
  AddList(lexicon_, kVerbs, PosTag::kVerb);
  AddList(lexicon_, kAuxiliaries, PosTag::kAux);
  AddList(lexicon_, kPronouns, PosTag::kPron);
  AddList(lexicon_, kConjunctions, PosTag::kConj);
  AddList(lexicon_, kAdpositions, PosTag::kAdp);
  AddList(lexicon_, kDeterminers, PosTag::kDet);
  // Closed classes override the noun list, except for the fruit.
  lexicon_["orange"] = PosTag::kNoun;
}

void LexiconTagger::AddWord(std::string word, PosTag tag) {
  lexicon_[ToLower(word)] = tag;
}

void LexiconTagger::LoadLexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open lexicon " + path.string());
  std::string line;
  while (std::getline(in, line)) {
    std::string_view body = Trim(line);
    if (body.empty() || body.front() == '#') continue;
    std::istringstream fields{std::string(body)};
    std::string word, tag;
    if (!(fields >> word >> tag)) {
      throw Error(ErrorCode::kSchema, "malformed lexicon line '" + line + "'");
    }
    AddWord(word, ParseTag(tag));
  }
}

PosTag LexiconTagger::TagWord(const std::string& lower, bool capitalized, bool first) const {
  if (auto it = lexicon_.find(lower); it != lexicon_.end()) return it->second;
  if (AllDigits(lower)) return PosTag::kNum;
  if (capitalized && !first) return PosTag::kPropn;
  if (EndsWith(lower, "ly")) return PosTag::kAdv;
  if (EndsWith(lower, "ing") || EndsWith(lower, "ed")) return PosTag::kVerb;
  for (std::string_view s : {"est", "ous", "ful", "ive", "able", "ible", "ish", "less"}) {
    if (EndsWith(lower, s)) return PosTag::kAdj;
  }
  return PosTag::kNoun;
}

std::vector<TaggedToken> LexiconTagger::Tag(std::string_view text) const {
  std::vector<TaggedToken> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  bool first = true;
  while (in >> raw) {
    std::string_view word = raw;
    while (!word.empty() && std::ispunct(static_cast<unsigned char>(word.front()))) {
      word.remove_prefix(1);
    }
    while (!word.empty() && std::ispunct(static_cast<unsigned char>(word.back()))) {
      word.remove_suffix(1);
    }
    if (word.size() > 2 && (word.ends_with("'s") || word.ends_with("’s"))) {
      word.remove_suffix(word.ends_with("'s") ? 2 : 4);
    }
    if (word.empty()) continue;
    const bool capitalized = std::isupper(static_cast<unsigned char>(word.front()));
    std::string lower = ToLower(word);
    PosTag tag = TagWord(lower, capitalized, first);
    out.push_back({std::move(lower), tag});
    first = false;
  }
  return out;
}

}  // namespace groundgraph
