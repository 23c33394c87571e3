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

#ifndef GROUNDGRAPH_OBJECT_GROUNDING_H_
#define GROUNDGRAPH_OBJECT_GROUNDING_H_

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "groundgraph/embeddings.h"
#include "groundgraph/geometry.h"
#include "groundgraph/query_analysis.h"

namespace groundgraph {

inline constexpr double kDefaultTau = 0.5;

struct Detection {
  std::string id;
  std::string label;
  BBox box;
  std::vector<std::string> attributes;
  std::optional<double> confidence;

  friend bool operator==(const Detection&, const Detection&) = default;
};

struct DetectionSet {
  std::string image_id;
  std::optional<ImageDims> dims;
  std::vector<Detection> detections;  // detector order
};

// Image id -> detections. Images with no records are absent; use
// DetectionsFor() to get an empty set for them.
using DetectionIndex = std::map<std::string, DetectionSet>;

// Newline-delimited records:
//   {"image_id", "det_id", "label", "box": {"form": "xyxy"|"xywh",
//    "values": [4 numbers]}, "attributes": [...], "confidence"?}
// Throws Error(kSchema) naming the line on violations, including a repeated
// det_id within one image.
DetectionIndex ParseDetections(std::istream& in, const std::string& source = "<stream>");
DetectionIndex LoadDetections(const std::filesystem::path& path);

DetectionSet DetectionsFor(const DetectionIndex& index, const std::string& image_id);

struct SelectionConfig {
  double tau = kDefaultTau;
  // Keep every detection (flagged) when nothing clears tau.
  bool fallback_to_all = true;

  void Validate() const;
};

struct Selection {
  std::vector<Detection> objects;  // detector order preserved
  bool fallback = false;
};

// max over names of cos(emb(label), emb(name)), skipping out-of-vocabulary
// names; nullopt when the label or every name is out of vocabulary.
std::optional<double> LabelScore(const EmbeddingTable& table, const std::string& label,
                  const std::vector<std::string>& names);

// Keeps detections whose LabelScore against names.All() is >= tau. An
// out-of-vocabulary label or name never selects anything.
Selection SelectObjects(const DetectionSet& detections, const QueryNames& names,
                        const SelectionConfig& config, const EmbeddingTable& table);

}  // namespace groundgraph

#endif  // GROUNDGRAPH_OBJECT_GROUNDING_H_
