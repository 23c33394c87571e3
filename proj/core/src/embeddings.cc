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

#include "groundgraph/embeddings.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "groundgraph/error.h"
#include "groundgraph/text_util.h"

namespace groundgraph {
namespace {

float DecodeFloatLe(const char* p) {
  std::uint32_t bits = 0;
  for (int i = 3; i >= 0; --i) {
    bits = (bits << 8) | static_cast<unsigned char>(p[i]);
  }
  return std::bit_cast<float>(bits);
}

void EncodeFloatLe(float f, std::string& out) {
  auto bits = std::bit_cast<std::uint32_t>(f);
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<char>(bits & 0xff));
    bits >>= 8;
  }
}

bool ParseCount(std::string_view s, long long& out) {
  if (s.empty()) return false;
  long long v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
    v = v * 10 + (c - '0');
    if (v > (1LL << 40)) return false;
  }
  out = v;
  return true;
}

}  // namespace

EmbeddingTable EmbeddingTable::Load(const std::filesystem::path& path,
                                    const EmbeddingLoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open embedding file " + path.string());
  }
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  return Parse(bytes, options);
}

EmbeddingTable EmbeddingTable::Parse(std::string_view bytes,
                                     const EmbeddingLoadOptions& options) {
  const std::size_t eol = bytes.find('\n');
  if (eol == std::string_view::npos) {
    throw Error(ErrorCode::kSchema, "embedding header is not terminated");
  }
  std::string_view header = Trim(bytes.substr(0, eol));
  const std::size_t sep = header.find(' ');
  long long vocab = 0;
  long long dim = 0;
  if (sep == std::string_view::npos || !ParseCount(header.substr(0, sep), vocab) ||
      !ParseCount(Trim(header.substr(sep + 1)), dim) || dim <= 0) {
    throw Error(ErrorCode::kSchema,
                "malformed embedding header '" + std::string(header) + "'");
  }
  if (options.expected_dimension && *options.expected_dimension != dim) {
    throw Error(ErrorCode::kSchema,
                "embedding dimension mismatch: header declares " +
                    std::to_string(dim) + ", expected " +
                    std::to_string(*options.expected_dimension));
  }

  std::size_t count = static_cast<std::size_t>(vocab);
  if (options.limit) count = std::min(count, *options.limit);

  EmbeddingTable table;
  table.dimension_ = static_cast<int>(dim);
  table.words_.reserve(count);
  table.data_.reserve(count * static_cast<std::size_t>(dim));
  const std::size_t vector_bytes = static_cast<std::size_t>(dim) * 4;

  std::size_t pos = eol + 1;
  for (std::size_t entry = 0; entry < count; ++entry) {
    const std::size_t space = bytes.find(' ', pos);
    if (space == std::string_view::npos) {
      throw Error(ErrorCode::kTruncated,
                  "embedding file ends before entry " + std::to_string(entry) +
                      " of " + std::to_string(vocab));
    }
    std::string token(bytes.substr(pos, space - pos));
    if (token.empty() || token.find('\n') != std::string::npos) {
      throw Error(ErrorCode::kSchema,
                  "malformed token at entry " + std::to_string(entry));
    }
    pos = space + 1;
    if (bytes.size() - pos < vector_bytes) {
      throw Error(ErrorCode::kTruncated,
                  "vector block of entry " + std::to_string(entry) + " ('" +
                      token + "') is truncated");
    }
    for (std::size_t k = 0; k < static_cast<std::size_t>(dim); ++k) {
      table.data_.push_back(DecodeFloatLe(bytes.data() + pos + 4 * k));
    }
    pos += vector_bytes;
    if (pos < bytes.size() && bytes[pos] == '\n') ++pos;
    table.index_.try_emplace(token, entry);
    table.words_.push_back(std::move(token));
  }
  return table;
}

EmbeddingTable EmbeddingTable::FromEntries(
    int dimension, std::vector<std::pair<std::string, std::vector<float>>> entries) {
  if (dimension <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "dimension must be positive");
  }
  EmbeddingTable table;
  table.dimension_ = dimension;
  for (auto& [word, values] : entries) {
    if (values.size() != static_cast<std::size_t>(dimension)) {
      throw Error(ErrorCode::kSchema, "vector for '" + word +
                                          "' does not have the table dimension");
    }
    if (word.empty() || word.find_first_of(" \n") != std::string::npos) {
      throw Error(ErrorCode::kSchema, "tokens may not be empty or contain spaces");
    }
    table.index_.try_emplace(word, table.words_.size());
    table.data_.insert(table.data_.end(), values.begin(), values.end());
    table.words_.push_back(std::move(word));
  }
  return table;
}

std::string EmbeddingTable::Serialize() const {
  std::string out = std::to_string(words_.size()) + " " + std::to_string(dimension_) + "\n";
  for (std::size_t i = 0; i < words_.size(); ++i) {
    out += words_[i];
    out.push_back(' ');
    for (int k = 0; k < dimension_; ++k) {
      EncodeFloatLe(data_[i * dimension_ + k], out);
    }
    out.push_back('\n');
  }
  return out;
}

void EmbeddingTable::Save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  const std::string bytes = Serialize();
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
}

std::span<const float> EmbeddingTable::Find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return {};
  return {data_.data() + it->second * dimension_, static_cast<std::size_t>(dimension_)};
}

std::optional<WordVector> EmbeddingTable::EmbedPhrase(std::string_view phrase) const {
  if (Trim(phrase).empty()) {
    throw Error(ErrorCode::kInvalidArgument, "cannot embed an empty phrase");
  }
  std::vector<double> sum(dimension_, 0.0);
  int hits = 0;
  for (const std::string& token : NormalizedTokens(phrase)) {
    auto v = Find(token);
    if (v.empty()) continue;
    for (int k = 0; k < dimension_; ++k) sum[k] += v[k];
    ++hits;
  }
  if (hits == 0) return std::nullopt;
  WordVector out;
  out.values.resize(dimension_);
  for (int k = 0; k < dimension_; ++k) {
    out.values[k] = static_cast<float>(sum[k] / hits);
  }
  return out;
}

double Cosine(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kInvalidArgument, "cosine of vectors with different dimensions");
  }
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<double>(a[i]) * b[i];
    na += static_cast<double>(a[i]) * a[i];
    nb += static_cast<double>(b[i]) * b[i];
  }
  if (na == 0 || nb == 0) {
    throw Error(ErrorCode::kInvalidArgument, "cosine of a zero vector");
  }
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

double SimilarityOrZero(const std::optional<WordVector>& a,
                        const std::optional<WordVector>& b) {
  if (!a || !b) return 0.0;
  auto is_zero = [](const WordVector& v) {
    return std::all_of(v.values.begin(), v.values.end(), [](float x) { return x == 0.0f; });
  };
  // All-zero rows exist in some published tables; treat them like OOV.
  if (is_zero(*a) || is_zero(*b)) return 0.0;
  return Cosine(a->values, b->values);
}

double PhraseSimilarity(const EmbeddingTable& table, std::string_view a,
                        std::string_view b) {
  return SimilarityOrZero(table.EmbedPhrase(a), table.EmbedPhrase(b));
}

}  // namespace groundgraph
