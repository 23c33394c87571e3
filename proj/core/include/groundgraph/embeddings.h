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

#ifndef GROUNDGRAPH_EMBEDDINGS_H_
#define GROUNDGRAPH_EMBEDDINGS_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace groundgraph {

struct WordVector {
  std::vector<float> values;

  std::size_t dimension() const { return values.size(); }
  friend bool operator==(const WordVector&, const WordVector&) = default;
};

struct EmbeddingLoadOptions {
  // Read only the first `limit` entries (files are frequency ordered).
  std::optional<std::size_t> limit;
  // When set, a header declaring another dimension is rejected.
  std::optional<int> expected_dimension;
};

// Static word-embedding table in the legacy word2vec binary layout:
//   "<vocab_size> <dim>\n" then, per entry, the token bytes, one space, dim
//   little-endian float32 values and an optional '\n'.
// Immutable after construction; lookups are safe from any thread.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;

  static EmbeddingTable Load(const std::filesystem::path& path,
                             const EmbeddingLoadOptions& options = {});
  static EmbeddingTable Parse(std::string_view bytes,
                              const EmbeddingLoadOptions& options = {});
  static EmbeddingTable FromEntries(
      int dimension,
      std::vector<std::pair<std::string, std::vector<float>>> entries);

  // Writes the binary layout, one trailing '\n' per vector.
  std::string Serialize() const;
  void Save(const std::filesystem::path& path) const;

  int dimension() const { return dimension_; }
  std::size_t size() const { return words_.size(); }
  const std::vector<std::string>& words() const { return words_; }

  // Exact-token lookup; empty span when absent.
  std::span<const float> Find(std::string_view token) const;
  bool Contains(std::string_view token) const { return !Find(token).empty(); }

  // Mean of the vectors of the in-vocabulary tokens of the phrase
  // (lowercased, punctuation-stripped). nullopt means out of vocabulary.
  // Throws Error(kInvalidArgument) on an empty phrase.
  std::optional<WordVector> EmbedPhrase(std::string_view phrase) const;

 private:
  int dimension_ = 0;
  std::vector<std::string> words_;
  std::vector<float> data_;
  std::unordered_map<std::string, std::size_t> index_;
};

// a.b / (|a||b|). Throws Error(kInvalidArgument) on dimension mismatch or a
// zero vector.
double Cosine(std::span<const float> a, std::span<const float> b);

// Cosine of the two phrase embeddings, or 0 if either side is out of
// vocabulary.
double PhraseSimilarity(const EmbeddingTable& table, std::string_view a,
                        std::string_view b);

// Same rule with precomputed embeddings.
double SimilarityOrZero(const std::optional<WordVector>& a,
                        const std::optional<WordVector>& b);

}  // namespace groundgraph

#endif  // GROUNDGRAPH_EMBEDDINGS_H_
