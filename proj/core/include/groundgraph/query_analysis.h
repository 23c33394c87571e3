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

#ifndef GROUNDGRAPH_QUERY_ANALYSIS_H_
#define GROUNDGRAPH_QUERY_ANALYSIS_H_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "groundgraph/chat_backend.h"
#include "groundgraph/embeddings.h"
#include "groundgraph/image.h"
#include "groundgraph/pos_tagger.h"
#include "groundgraph/prompts.h"

namespace groundgraph {

inline constexpr double kDefaultMinCategorySimilarity = 0.35;

struct Query {
  std::string id;
  std::string text;
};

// Query-related object names, kept per source for reporting. Each list is
// lowercase and duplicate-free.
struct QueryNames {
  std::vector<std::string> nouns;
  std::vector<std::string> categories;
  std::vector<std::string> subjects;

  // Union in source order (nouns, categories, subjects), duplicates removed.
  std::vector<std::string> All() const;
  bool empty() const { return nouns.empty() && categories.empty() && subjects.empty(); }

  friend bool operator==(const QueryNames&, const QueryNames&) = default;
};

class CategoryList {
 public:
  // The 80 COCO detection categories.
  static CategoryList Coco();
  // One name per line; blank lines ignored. Throws on duplicates or an empty
  // list.
  static CategoryList Load(const std::filesystem::path& path);
  explicit CategoryList(std::vector<std::string> names);

  const std::vector<std::string>& names() const { return names_; }
  bool Contains(std::string_view name) const;

 private:
  std::vector<std::string> names_;
};

// Tokens tagged NOUN, PROPN or PRON, first-appearance order, deduplicated.
// Throws Error(kInvalidArgument) on an empty query.
std::vector<std::string> ExtractNouns(const Query& query, const PosTagger& tagger);

// For each noun, the category with the highest cosine similarity (first in
// list order on ties), kept when that similarity reaches min_similarity.
std::vector<std::string> PredictCategories(std::span<const std::string> nouns,
                                           const CategoryList& categories,
                                           const EmbeddingTable& table,
                                           double min_similarity = kDefaultMinCategorySimilarity);

struct SubjectInference {
  std::vector<std::string> subjects;
  std::string raw_response;

  // The backend answered but no subject name could be read from it.
  bool subject_empty() const { return subjects.empty(); }
};

// Splits a subject answer on commas and "and", lowercases, trims, and drops
// leading articles and trailing punctuation. Only the first line is read.
std::vector<std::string> ParseSubjects(std::string_view response);

SubjectInference InferSubjects(const Query& query, const Image& image, ChatBackend& vlm,
                               const PromptSet& prompts, const SamplingParams& params);

// Throws Error(kEmptyNameSet) when all three lists are empty.
QueryNames BuildNameSet(std::span<const std::string> nouns,
                        std::span<const std::string> categories,
                        std::span<const std::string> subjects);

}  // namespace groundgraph

#endif  // GROUNDGRAPH_QUERY_ANALYSIS_H_
