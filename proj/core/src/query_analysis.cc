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

#include "groundgraph/query_analysis.h"

#include <algorithm>
#include <fstream>
#include <optional>
#include <set>

#include "groundgraph/error.h"
#include "groundgraph/text_util.h"

namespace groundgraph {
namespace {

constexpr const char* kCocoCategories[] = {
    "person",        "bicycle",      "car",           "motorcycle",    "airplane",
    "bus",           "train",        "truck",         "boat",          "traffic light",
    "fire hydrant",  "stop sign",    "parking meter", "bench",         "bird",
    "cat",           "dog",          "horse",         "sheep",         "cow",
    "elephant",      "bear",         "zebra",         "giraffe",       "backpack",
    "umbrella",      "handbag",      "tie",           "suitcase",      "frisbee",
    "skis",          "snowboard",    "sports ball",   "kite",          "baseball bat",
    "baseball glove", "skateboard",  "surfboard",     "tennis racket", "bottle",
    "wine glass",    "cup",          "fork",          "knife",         "spoon",
    "bowl",          "banana",       "apple",         "sandwich",      "orange",
    "broccoli",      "carrot",       "hot dog",       "pizza",         "donut",
    "cake",          "chair",        "couch",         "potted plant",  "bed",
    "dining table",  "toilet",       "tv",            "laptop",        "mouse",
    "remote",        "keyboard",     "cell phone",    "microwave",     "oven",
    "toaster",       "sink",         "refrigerator",  "book",          "clock",
    "vase",          "scissors",     "teddy bear",    "hair drier",    "toothbrush"};

void AppendUnique(std::vector<std::string>& out, std::set<std::string>& seen,
                  const std::string& name) {
  if (!name.empty() && seen.insert(name).second) out.push_back(name);
}

std::vector<std::string> Dedup(std::span<const std::string> names) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& n : names) AppendUnique(out, seen, CollapseWhitespace(ToLower(n)));
  return out;
}

}  // namespace

std::vector<std::string> QueryNames::All() const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto* list : {&nouns, &categories, &subjects}) {
    for (const auto& n : *list) AppendUnique(out, seen, n);
  }
  return out;
}

CategoryList CategoryList::Coco() {
  return CategoryList(std::vector<std::string>(std::begin(kCocoCategories),
                                               std::end(kCocoCategories)));
}

CategoryList CategoryList::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open category list " + path.string());
  std::vector<std::string> names;
  std::string line;
  while (std::getline(in, line)) {
    std::string name = CollapseWhitespace(ToLower(line));
    if (!name.empty()) names.push_back(std::move(name));
  }
  return CategoryList(std::move(names));
}

CategoryList::CategoryList(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw Error(ErrorCode::kSchema, "category list is empty");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (!seen.insert(n).second) {
      throw Error(ErrorCode::kSchema, "duplicate category '" + n + "'");
    }
  }
}

bool CategoryList::Contains(std::string_view name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

std::vector<std::string> ExtractNouns(const Query& query, const PosTagger& tagger) {
  if (Trim(query.text).empty()) {
    throw Error(ErrorCode::kInvalidArgument, "query '" + query.id + "' is empty");
  }
  std::vector<std::string> nouns;
  std::set<std::string> seen;
  for (const auto& token : tagger.Tag(query.text)) {
    if (token.tag == PosTag::kNoun || token.tag == PosTag::kPropn ||
        token.tag == PosTag::kPron) {
      AppendUnique(nouns, seen, token.text);
    }
  }
  return nouns;
}

std::vector<std::string> PredictCategories(std::span<const std::string> nouns,
                                           const CategoryList& categories,
                                           const EmbeddingTable& table,
                                           double min_similarity) {
  std::vector<std::optional<WordVector>> category_vectors;
  category_vectors.reserve(categories.names().size());
  for (const auto& c : categories.names()) category_vectors.push_back(table.EmbedPhrase(c));

  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& noun : nouns) {
    if (Trim(noun).empty()) continue;
    const auto noun_vector = table.EmbedPhrase(noun);
    if (!noun_vector) continue;
    double best = -2.0;
    std::size_t best_index = 0;
    for (std::size_t i = 0; i < category_vectors.size(); ++i) {
      if (!category_vectors[i]) continue;
      const double sim = SimilarityOrZero(noun_vector, category_vectors[i]);
      if (sim > best) {
        best = sim;
        best_index = i;
      }
    }
    if (best >= min_similarity) AppendUnique(out, seen, categories.names()[best_index]);
  }
  return out;
}

std::vector<std::string> ParseSubjects(std::string_view response) {
  std::string_view first_line = Trim(response);
  if (auto eol = first_line.find('\n'); eol != std::string_view::npos) {
    first_line = first_line.substr(0, eol);
  }
  std::string text = ToLower(first_line);
  for (char& c : text) {
    if (c == ',' || c == ';' || c == '/' || c == '&') c = '|';
  }
  // Word-level split so "and" inside a word ("sandwich") is untouched.
  std::vector<std::string> parts(1);
  std::string_view rest = text;
  while (!rest.empty()) {
    const std::size_t end = std::min(rest.find_first_of(" \t\r|"), rest.size());
    std::string_view word = rest.substr(0, end);
    const char sep = end < rest.size() ? rest[end] : ' ';
    rest.remove_prefix(std::min(end + 1, rest.size()));
    if (word == "and") {
      parts.emplace_back();
    } else if (!word.empty()) {
      if (!parts.back().empty()) parts.back().push_back(' ');
      parts.back().append(word);
    }
    if (sep == '|') parts.emplace_back();
  }

  std::vector<std::string> subjects;
  std::set<std::string> seen;
  for (const std::string& part : parts) {
    std::vector<std::string> words = NormalizedTokens(part);
    while (!words.empty() && (words.front() == "the" || words.front() == "a" ||
                              words.front() == "an")) {
      words.erase(words.begin());
    }
    std::string name;
    for (const auto& w : words) name += (name.empty() ? "" : " ") + w;
    AppendUnique(subjects, seen, name);
  }
  return subjects;
}

SubjectInference InferSubjects(const Query& query, const Image& image, ChatBackend& vlm,
                               const PromptSet& prompts, const SamplingParams& params) {
  ChatRequest request;
  request.prompt = prompts.Get(PromptKind::kSubjectInference).Render({{"query", query.text}});
  request.images.push_back({"image/png", image.EncodePng()});
  request.params = params;
  SubjectInference out;
  out.raw_response = vlm.Chat(request).text;
  out.subjects = ParseSubjects(out.raw_response);
  return out;
}

QueryNames BuildNameSet(std::span<const std::string> nouns,
                        std::span<const std::string> categories,
                        std::span<const std::string> subjects) {
  QueryNames names{Dedup(nouns), Dedup(categories), Dedup(subjects)};
  if (names.empty()) {
    throw Error(ErrorCode::kEmptyNameSet, "no nouns, categories or subjects for query");
  }
  return names;
}

}  // namespace groundgraph
