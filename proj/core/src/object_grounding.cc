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

#include "groundgraph/object_grounding.h"

#include <algorithm>
#include <array>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "groundgraph/error.h"
#include "groundgraph/text_util.h"

namespace groundgraph {
namespace {

std::string IdString(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw Error(ErrorCode::kSchema, "ids must be strings or integers");
}

Detection ParseRecord(const nlohmann::json& rec, std::string& image_id) {
  if (!rec.is_object()) throw Error(ErrorCode::kSchema, "record is not an object");
  for (const char* key : {"image_id", "det_id", "label", "box"}) {
    if (!rec.contains(key)) {
      throw Error(ErrorCode::kSchema, std::string("missing \"") + key + "\"");
    }
  }
  image_id = IdString(rec["image_id"]);
  Detection det;
  det.id = IdString(rec["det_id"]);
  if (!rec["label"].is_string() || Trim(rec["label"].get<std::string>()).empty()) {
    throw Error(ErrorCode::kSchema, "\"label\" must be a non-empty string");
  }
  det.label = std::string(Trim(rec["label"].get<std::string>()));
  const auto& box = rec["box"];
  if (!box.is_object() || !box.contains("values") || !box["values"].is_array() ||
      box["values"].size() != 4) {
    throw Error(ErrorCode::kSchema, "\"box\" needs \"values\" with 4 numbers");
  }
  std::array<double, 4> values{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (!box["values"][i].is_number()) {
      throw Error(ErrorCode::kSchema, "box values must be numbers");
    }
    values[i] = box["values"][i].get<double>();
  }
  det.box = MakeBox(ParseBoxForm(box.value("form", std::string("xyxy"))), values);
  if (rec.contains("attributes") && !rec["attributes"].is_null()) {
    for (const auto& a : rec["attributes"]) {
      if (!a.is_string()) throw Error(ErrorCode::kSchema, "attributes must be strings");
      det.attributes.push_back(a.get<std::string>());
    }
  }
  if (rec.contains("confidence") && !rec["confidence"].is_null()) {
    if (!rec["confidence"].is_number()) {
      throw Error(ErrorCode::kSchema, "confidence must be a number");
    }
    det.confidence = rec["confidence"].get<double>();
  }
  return det;
}

// All-zero rows carry no direction; they are treated like missing words.
std::optional<WordVector> Usable(std::optional<WordVector> v) {
  if (v && std::all_of(v->values.begin(), v->values.end(), [](float x) { return x == 0.0f; })) {
    return std::nullopt;
  }
  return v;
}

}  // namespace

DetectionIndex ParseDetections(std::istream& in, const std::string& source) {
  DetectionIndex index;
  std::map<std::string, std::set<std::string>> seen_ids;
  std::string line;
  for (int line_no = 1; std::getline(in, line); ++line_no) {
    if (Trim(line).empty()) continue;
    const std::string where = source + ":" + std::to_string(line_no);
    std::string image_id;
    Detection det;
    try {
      det = ParseRecord(nlohmann::json::parse(line), image_id);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kSchema, where + ": " + e.what());
    } catch (const Error& e) {
      throw Error(ErrorCode::kSchema, where + ": " + e.what());
    }
    if (!seen_ids[image_id].insert(det.id).second) {
      throw Error(ErrorCode::kSchema, where + ": duplicate det_id '" + det.id +
                                          "' for image '" + image_id + "'");
    }
    auto& set = index[image_id];
    set.image_id = image_id;
    set.detections.push_back(std::move(det));
  }
  return index;
}

DetectionIndex LoadDetections(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open detections " + path.string());
  return ParseDetections(in, path.string());
}

DetectionSet DetectionsFor(const DetectionIndex& index, const std::string& image_id) {
  if (auto it = index.find(image_id); it != index.end()) return it->second;
  DetectionSet empty;
  empty.image_id = image_id;
  return empty;
}

void SelectionConfig::Validate() const {
  if (!(tau >= 0 && tau <= 1)) throw Error(ErrorCode::kConfig, "tau must lie in [0, 1]");
}

std::optional<double> LabelScore(const EmbeddingTable& table, const std::string& label,
                                 const std::vector<std::string>& names) {
  const auto label_vector = Usable(table.EmbedPhrase(label));
  if (!label_vector) return std::nullopt;
  std::optional<double> best;
  for (const auto& name : names) {
    const auto name_vector = Usable(table.EmbedPhrase(name));
    if (!name_vector) continue;
    const double sim = SimilarityOrZero(label_vector, name_vector);
    if (!best || sim > *best) best = sim;
  }
  return best;
}

Selection SelectObjects(const DetectionSet& detections, const QueryNames& names,
                        const SelectionConfig& config, const EmbeddingTable& table) {
  config.Validate();
  const std::vector<std::string> all_names = names.All();
  std::vector<std::optional<WordVector>> name_vectors;
  name_vectors.reserve(all_names.size());
  for (const auto& n : all_names) name_vectors.push_back(Usable(table.EmbedPhrase(n)));

  Selection selection;
  for (const auto& det : detections.detections) {
    const auto label_vector = Usable(table.EmbedPhrase(det.label));
    if (!label_vector) continue;
    for (const auto& nv : name_vectors) {
      if (nv && SimilarityOrZero(label_vector, nv) >= config.tau) {
        selection.objects.push_back(det);
        break;
      }
    }
  }
  if (selection.objects.empty() && config.fallback_to_all) {
    selection.objects = detections.detections;
    selection.fallback = true;
  }
  return selection;
}

}  // namespace groundgraph
