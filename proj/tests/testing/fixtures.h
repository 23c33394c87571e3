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

#ifndef GROUNDGRAPH_TESTS_TESTING_FIXTURES_H_
#define GROUNDGRAPH_TESTS_TESTING_FIXTURES_H_

#include <cmath>
#include <cstring>
#include <filesystem>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "groundgraph/embeddings.h"
#include "groundgraph/query_analysis.h"

namespace groundgraph::testing {

inline std::filesystem::path DataDir() { return GROUNDGRAPH_TEST_DATA_DIR; }
inline std::filesystem::path SourceDir() { return GROUNDGRAPH_SOURCE_DIR; }

// Unit vector with weight `c` on axis `a` and the rest on axis `b`.
inline std::vector<float> Mix(int dim, int a, double c, int b) {
  std::vector<float> v(dim, 0.0f);
  v[a] = static_cast<float>(c);
  if (c < 1.0) v[b] = static_cast<float>(std::sqrt(1.0 - c * c));
  return v;
}

// person/man 0.61, person/table 0.18, person/kite 0.12, puppy/dog 0.9,
// puppy/cat 0.45, dog/cat 0.5.
inline EmbeddingTable FixtureTable() {
  constexpr int kDim = 10;
  return EmbeddingTable::FromEntries(
      kDim, {{"person", Mix(kDim, 0, 1.0, 0)},
             {"man", Mix(kDim, 0, 0.61, 1)},
             {"table", Mix(kDim, 0, 0.18, 2)},
             {"kite", Mix(kDim, 0, 0.12, 3)},
             {"dog", Mix(kDim, 4, 1.0, 4)},
             {"puppy", Mix(kDim, 4, 0.9, 5)},
             {"cat", Mix(kDim, 4, 0.5, 6)},
             {"umbrella", Mix(kDim, 7, 1.0, 7)},
             {"dining", Mix(kDim, 8, 1.0, 8)},
             {"zero", std::vector<float>(kDim, 0.0f)}});
}

inline CategoryList FixtureCategories() {
  return CategoryList({"person", "dog", "cat", "kite", "umbrella", "dining table"});
}

// Random vectors for property tests; some words share directions.
inline EmbeddingTable RandomTable(std::mt19937_64& rng, const std::vector<std::string>& words,
                                  int dim) {
  std::normal_distribution<float> g(0.0f, 1.0f);
  std::vector<std::pair<std::string, std::vector<float>>> entries;
  for (const auto& w : words) {
    std::vector<float> v(dim);
    for (auto& x : v) x = g(rng);
    entries.emplace_back(w, std::move(v));
  }
  return EmbeddingTable::FromEntries(dim, std::move(entries));
}

// Little-endian float bytes written without the library.
inline std::string LittleEndian(float f) {
  unsigned char b[4];
  std::uint32_t u;
  std::memcpy(&u, &f, 4);
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>((u >> (8 * i)) & 0xff);
  return std::string(reinterpret_cast<char*>(b), 4);
}

// The hand-written "3 4" table.
inline std::string ThreeByFourBytes(bool newline_after_vectors = true) {
  const std::vector<std::pair<std::string, std::vector<float>>> rows = {
      {"alpha", {1.0f, 0.0f, -2.5f, 0.125f}},
      {"beta", {0.0f, 3.0f, 1e-3f, -7.0f}},
      {"gamma", {0.5f, 0.5f, 0.5f, 0.5f}}};
  std::string out = "3 4\n";
  for (const auto& [w, v] : rows) {
    out += w + " ";
    for (float f : v) out += LittleEndian(f);
    if (newline_after_vectors) out += "\n";
  }
  return out;
}

}  // namespace groundgraph::testing

#endif  // GROUNDGRAPH_TESTS_TESTING_FIXTURES_H_
