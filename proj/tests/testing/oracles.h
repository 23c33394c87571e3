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

#ifndef GROUNDGRAPH_TESTS_TESTING_ORACLES_H_
#define GROUNDGRAPH_TESTS_TESTING_ORACLES_H_

// Reference implementations that share no code with the library. Geometry
// works on integer corners so every area is an exact integer.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "groundgraph/embeddings.h"
#include "groundgraph/geometry.h"
#include "groundgraph/object_grounding.h"

namespace groundgraph::testing {

struct IntBox {
  std::int64_t x1, y1, x2, y2;

  BBox ToBBox() const {
    return {static_cast<double>(x1), static_cast<double>(y1), static_cast<double>(x2),
            static_cast<double>(y2)};
  }
};

struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Fraction Of(std::int64_t n, std::int64_t d) {
    if (d == 0) return {0, 1};
    const std::int64_t g = std::gcd(n, d);
    return {n / g, d / g};
  }
  double ToDouble() const { return static_cast<double>(num) / static_cast<double>(den); }
  // Exact comparison against p/q.
  bool GreaterThan(std::int64_t p, std::int64_t q) const { return num * q > p * den; }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

inline std::int64_t ExactArea(const IntBox& b) { return (b.x2 - b.x1) * (b.y2 - b.y1); }

inline std::int64_t ExactIntersection(const IntBox& a, const IntBox& b) {
  const std::int64_t w = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
  const std::int64_t h = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
  return w > 0 && h > 0 ? w * h : 0;
}

inline Fraction ExactIou(const IntBox& a, const IntBox& b) {
  const std::int64_t i = ExactIntersection(a, b);
  const std::int64_t u = ExactArea(a) + ExactArea(b) - i;
  return u == 0 ? Fraction{0, 1} : Fraction::Of(i, u);
}

// Empty when the smaller box has no area.
inline std::optional<Fraction> ExactOverlapOfSmaller(const IntBox& a, const IntBox& b) {
  const std::int64_t s = std::min(ExactArea(a), ExactArea(b));
  if (s == 0) return std::nullopt;
  return Fraction::Of(ExactIntersection(a, b), s);
}

// Counts unit cells [x, x+1) x [y, y+1) covered by each box.
struct GridCounts {
  std::int64_t a = 0, b = 0, both = 0;
};

inline GridCounts CountCells(const IntBox& a, const IntBox& b) {
  GridCounts c;
  const std::int64_t lo_x = std::min(a.x1, b.x1), hi_x = std::max(a.x2, b.x2);
  const std::int64_t lo_y = std::min(a.y1, b.y1), hi_y = std::max(a.y2, b.y2);
  for (std::int64_t x = lo_x; x < hi_x; ++x) {
    for (std::int64_t y = lo_y; y < hi_y; ++y) {
      const bool in_a = x >= a.x1 && x < a.x2 && y >= a.y1 && y < a.y2;
      const bool in_b = x >= b.x1 && x < b.x2 && y >= b.y1 && y < b.y2;
      c.a += in_a;
      c.b += in_b;
      c.both += in_a && in_b;
    }
  }
  return c;
}

inline IntBox RandomIntBox(std::mt19937_64& rng, std::int64_t extent, bool allow_empty = true) {
  std::uniform_int_distribution<std::int64_t> coord(0, extent);
  while (true) {
    std::int64_t x1 = coord(rng), x2 = coord(rng), y1 = coord(rng), y2 = coord(rng);
    if (x1 > x2) std::swap(x1, x2);
    if (y1 > y2) std::swap(y1, y2);
    IntBox b{x1, y1, x2, y2};
    if (allow_empty || ExactArea(b) > 0) return b;
  }
}

// Cosine computed from raw table rows, in long double.
inline std::optional<long double> OracleCosine(const EmbeddingTable& table, const std::string& a,
                                               const std::string& b) {
  auto mean = [&](const std::string& phrase) -> std::optional<std::vector<long double>> {
    std::istringstream in(phrase);
    std::string tok;
    std::vector<long double> sum(table.dimension(), 0.0L);
    int n = 0;
    while (in >> tok) {
      std::transform(tok.begin(), tok.end(), tok.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
      });
      const auto row = table.Find(tok);
      if (row.empty()) continue;
      for (int i = 0; i < table.dimension(); ++i) sum[i] += row[i];
      ++n;
    }
    if (n == 0) return std::nullopt;
    for (auto& v : sum) v /= n;
    return sum;
  };
  const auto va = mean(a), vb = mean(b);
  if (!va || !vb) return std::nullopt;
  long double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < va->size(); ++i) {
    dot += (*va)[i] * (*vb)[i];
    na += (*va)[i] * (*va)[i];
    nb += (*vb)[i] * (*vb)[i];
  }
  if (na == 0 || nb == 0) return std::nullopt;
  return dot / std::sqrt(na * nb);
}

// Every (label, name) pair; keeps a detection when any pair reaches tau.
inline std::vector<std::string> BruteForceSelect(const std::vector<Detection>& dets,
                                                 const std::vector<std::string>& names,
                                                 double tau, const EmbeddingTable& table) {
  std::vector<std::string> kept;
  for (const auto& d : dets) {
    bool keep = false;
    for (const auto& n : names) {
      const auto c = OracleCosine(table, d.label, n);
      if (c && *c >= tau) keep = true;
    }
    if (keep) kept.push_back(d.id);
  }
  return kept;
}

// All C(n,2) index pairs (1-based) with overlap strictly above p/q.
inline std::set<std::pair<int, int>> BruteForcePairs(const std::vector<IntBox>& boxes,
                                                     std::int64_t p, std::int64_t q) {
  std::set<std::pair<int, int>> out;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    for (std::size_t j = i + 1; j < boxes.size(); ++j) {
      const auto r = ExactOverlapOfSmaller(boxes[i], boxes[j]);
      if (r && r->GreaterThan(p, q)) out.emplace(static_cast<int>(i + 1), static_cast<int>(j + 1));
    }
  }
  return out;
}

}  // namespace groundgraph::testing

#endif  // GROUNDGRAPH_TESTS_TESTING_ORACLES_H_
