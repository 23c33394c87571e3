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

#include "groundgraph/scene_graph.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "groundgraph/error.h"
#include "groundgraph/text_util.h"

namespace groundgraph {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string JoinBox(const BBox& box, std::string_view sep) {
  const auto c = RoundedCorners(box);
  std::ostringstream out;
  out << c[0] << sep << c[1] << sep << c[2] << sep << c[3];
  return out.str();
}

std::string Join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += sep;
    out += item;
  }
  return out;
}

int RequireInt(const nlohmann::json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) {
    throw Error(ErrorCode::kSchema, where + " is missing \"" + key + "\"");
  }
  if (!obj[key].is_number_integer()) {
    throw Error(ErrorCode::kSchema, where + ": \"" + key + "\" must be an integer");
  }
  return obj[key].get<int>();
}

std::string RequireString(const nlohmann::json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) {
    throw Error(ErrorCode::kSchema, where + " is missing \"" + key + "\"");
  }
  if (!obj[key].is_string()) {
    throw Error(ErrorCode::kSchema, where + ": \"" + key + "\" must be a string");
  }
  return obj[key].get<std::string>();
}

}  // namespace

SceneGraph::SceneGraph(std::string image_id, std::string query_id, std::vector<Node> nodes,
                       std::vector<Edge> edges)
    : image_id_(std::move(image_id)),
      query_id_(std::move(query_id)),
      nodes_(std::move(nodes)),
      edges_(std::move(edges)) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].index != static_cast<int>(i) + 1) {
      throw Error(ErrorCode::kSchema, "node indices must run 1..n in order");
    }
    if (!nodes_[i].box.valid()) {
      throw Error(ErrorCode::kSchema, "node " + std::to_string(i + 1) + " has an invalid box");
    }
  }
  std::set<std::pair<int, int>> pairs;
  for (const Edge& e : edges_) {
    const int n = static_cast<int>(nodes_.size());
    if (e.obj1 < 1 || e.obj1 > n || e.obj2 < 1 || e.obj2 > n) {
      throw Error(ErrorCode::kSchema, "edge endpoint outside the node set");
    }
    if (e.obj1 == e.obj2) throw Error(ErrorCode::kSchema, "self-loop edge");
    if (Trim(e.relation).empty()) throw Error(ErrorCode::kSchema, "edge without relation");
    if (!pairs.insert(std::minmax(e.obj1, e.obj2)).second) {
      throw Error(ErrorCode::kSchema, "duplicate edge between " + std::to_string(e.obj1) +
                                          " and " + std::to_string(e.obj2));
    }
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.obj1, a.obj2) < std::tie(b.obj1, b.obj2);
  });
}

const Node& SceneGraph::node(int index) const {
  if (index < 1 || index > size()) {
    throw Error(ErrorCode::kInvalidArgument, "node index " + std::to_string(index) +
                                                 " outside 1.." + std::to_string(size()));
  }
  return nodes_[static_cast<std::size_t>(index - 1)];
}

bool StructurallyEqual(const SceneGraph& a, const SceneGraph& b) {
  if (a.image_id() != b.image_id() || a.query_id() != b.query_id() ||
      a.size() != b.size() || a.edges() != b.edges()) {
    return false;
  }
  for (int i = 1; i <= a.size(); ++i) {
    const Node& x = a.node(i);
    const Node& y = b.node(i);
    if (x.label != y.label || RoundedCorners(x.box) != RoundedCorners(y.box) ||
        x.attributes != y.attributes || x.caption != y.caption) {
      return false;
    }
  }
  return true;
}

std::vector<Node> AssignNodes(std::span<const Detection> selection) {
  if (selection.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "cannot build a scene graph without objects");
  }
  std::vector<Node> nodes;
  nodes.reserve(selection.size());
  for (std::size_t i = 0; i < selection.size(); ++i) {
    nodes.push_back({static_cast<int>(i) + 1, selection[i].label, selection[i].box,
                     selection[i].attributes, ""});
  }
  return nodes;
}

void InteractionConfig::Validate() const {
  if (!(theta >= 0 && theta <= 1)) throw Error(ErrorCode::kConfig, "theta must lie in [0, 1]");
}

std::vector<std::pair<int, int>> CandidatePairs(std::span<const Node> nodes,
                                                const InteractionConfig& config) {
  config.Validate();
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      const OverlapRatio r = OverlapRatioOfSmaller(nodes[i].box, nodes[j].box);
      if (!r.degenerate && r.value > config.theta) {
        pairs.push_back(std::minmax(nodes[i].index, nodes[j].index));
      }
    }
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

std::string NormalizeCaption(std::string_view raw, int max_words) {
  return TruncateWords(raw, max_words);
}

std::string NormalizeRelation(std::string_view raw, int max_words) {
  std::string text = CollapseWhitespace(raw);
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if ((c == '.' || c == '!' || c == '?') && (i + 1 == text.size() || text[i + 1] == ' ')) {
      text.resize(i);
      break;
    }
  }
  return TruncateWords(text, max_words);
}

CaptionOutcome CaptionNode(const Node& node, const Image& image, ChatBackend& vlm,
                           const PromptSet& prompts, const CaptionOptions& options) {
  const std::optional<Image> crop = image.Crop(node.box);
  if (!crop) {
    return {"", "object " + std::to_string(node.index) + " (" + node.label +
                    ") has a degenerate crop; caption left empty"};
  }
  ChatRequest request;
  request.prompt = prompts.Get(PromptKind::kObjectCaption).Render({{"obj_name", node.label}});
  request.images.push_back({"image/png", crop->EncodePng()});
  request.params = options.params;
  return {NormalizeCaption(vlm.Chat(request).text, options.max_words), std::nullopt};
}

Image HighlightPair(const Image& image, const BBox& b1, const BBox& b2, int stroke_width) {
  if (stroke_width <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "stroke width must be positive");
  }
  return image.WithRectangle(b1, kRed, stroke_width).WithRectangle(b2, kBlue, stroke_width);
}

InteractionOutcome InferInteraction(std::pair<int, int> pair, std::span<const Node> nodes,
                                    const Image& image, ChatBackend& vlm,
                                    const PromptSet& prompts,
                                    const InteractionOptions& options) {
  const auto [first, second] = std::minmax(pair.first, pair.second);
  auto find = [&](int index) -> const Node& {
    for (const Node& n : nodes) {
      if (n.index == index) return n;
    }
    throw Error(ErrorCode::kInvalidArgument, "no node " + std::to_string(index));
  };
  const Node& obj1 = find(first);
  const Node& obj2 = find(second);

  ChatRequest request;
  request.prompt = prompts.Get(PromptKind::kInteraction)
                       .Render({{"obj1", obj1.label}, {"obj2", obj2.label}});
  request.images.push_back(
      {"image/png", HighlightPair(image, obj1.box, obj2.box, options.stroke_width).EncodePng()});
  request.params = options.params;
  std::string relation = NormalizeRelation(vlm.Chat(request).text, options.max_words);
  if (relation.empty()) {
    return {std::nullopt, "empty relation for objects " + std::to_string(first) + " and " +
                              std::to_string(second) + "; edge dropped"};
  }
  return {Edge{first, second, std::move(relation)}, std::nullopt};
}

SceneGraphBuild GenerateSceneGraph(const std::string& image_id, const std::string& query_id,
                                   std::span<const Detection> selection, const Image& image,
                                   ChatBackend& vlm, const PromptSet& prompts,
                                   const SceneGraphOptions& options) {
  SceneGraphBuild build;
  std::vector<Node> nodes = AssignNodes(selection);
  for (Node& node : nodes) {
    CaptionOutcome caption = CaptionNode(node, image, vlm, prompts, options.caption);
    node.caption = std::move(caption.caption);
    if (caption.warning) build.warnings.push_back(*caption.warning);
  }
  const auto pairs = CandidatePairs(nodes, options.interaction);
  build.candidate_pairs = static_cast<int>(pairs.size());
  std::vector<Edge> edges;
  for (const auto& pair : pairs) {
    InteractionOutcome outcome =
        InferInteraction(pair, nodes, image, vlm, prompts, options.relation);
    if (outcome.edge) edges.push_back(std::move(*outcome.edge));
    if (outcome.warning) build.warnings.push_back(*outcome.warning);
  }
  build.graph = SceneGraph(image_id, query_id, std::move(nodes), std::move(edges));
  return build;
}

GraphForm ParseGraphForm(std::string_view name) {
  if (name == "json") return GraphForm::kJson;
  if (name == "structured_text") return GraphForm::kStructuredText;
  if (name == "natural_language") return GraphForm::kNaturalLanguage;
  throw Error(ErrorCode::kConfig, "unknown scene graph form '" + std::string(name) + "'");
}

std::string_view GraphFormName(GraphForm form) {
  switch (form) {
    case GraphForm::kJson: return "json";
    case GraphForm::kStructuredText: return "structured_text";
    case GraphForm::kNaturalLanguage: return "natural_language";
  }
  return "";
}

std::string Serialize(const SceneGraph& graph, GraphForm form) {
  switch (form) {
    case GraphForm::kJson: {
      ordered_json doc;
      doc["image_id"] = graph.image_id();
      doc["query_id"] = graph.query_id();
      auto objects = ordered_json::array();
      for (const Node& n : graph.nodes()) {
        ordered_json o;
        o["id"] = n.index;
        o["label"] = ordered_json::array({n.label});
        const auto c = RoundedCorners(n.box);
        o["box"] = ordered_json::array({c[0], c[1], c[2], c[3]});
        o["attributes"] = n.attributes;
        o["caption"] = n.caption;
        objects.push_back(std::move(o));
      }
      doc["objects"] = std::move(objects);
      auto relations = ordered_json::array();
      for (const Edge& e : graph.edges()) {
        ordered_json r;
        r["obj1"] = e.obj1;
        r["relation"] = e.relation;
        r["obj2"] = e.obj2;
        relations.push_back(std::move(r));
      }
      doc["relations"] = std::move(relations);
      return doc.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
    }
    case GraphForm::kStructuredText: {
      std::string out;
      for (const Node& n : graph.nodes()) {
        out += "Object " + std::to_string(n.index) + ". label: " + n.label +
               ", attribute: " + (n.attributes.empty() ? "none" : Join(n.attributes, " ")) +
               ", box: " + JoinBox(n.box, " ") +
               ", caption: " + (n.caption.empty() ? "none" : n.caption) + "\n";
      }
      for (const Edge& e : graph.edges()) {
        out += "Relation. obj1: " + std::to_string(e.obj1) + ", relation: " + e.relation +
               ", obj2: " + std::to_string(e.obj2) + "\n";
      }
      return out;
    }
    case GraphForm::kNaturalLanguage: {
      std::string out;
      for (const Node& n : graph.nodes()) {
        out += "Object " + std::to_string(n.index) + ": " +
               (n.caption.empty() ? n.label : n.caption) + "\n";
      }
      return out;
    }
  }
  return "";
}

SceneGraph ParseSceneGraphJson(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchema, std::string("scene graph is not JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::kSchema, "scene graph must be an object");
  try {
    const std::string image_id = doc.contains("image_id") ? RequireString(doc, "image_id", "graph") : "";
    const std::string query_id = doc.contains("query_id") ? RequireString(doc, "query_id", "graph") : "";
    if (!doc.contains("objects") || !doc["objects"].is_array()) {
      throw Error(ErrorCode::kSchema, "graph needs an \"objects\" array");
    }
    std::vector<Node> nodes;
    for (const auto& o : doc["objects"]) {
      const std::string where = "object " + std::to_string(nodes.size() + 1);
      if (!o.is_object()) throw Error(ErrorCode::kSchema, where + " is not an object");
      Node n;
      n.index = RequireInt(o, "id", where);
      if (!o.contains("label") || !o["label"].is_array() || o["label"].size() != 1 ||
          !o["label"][0].is_string()) {
        throw Error(ErrorCode::kSchema, where + ": \"label\" must be a one-string array");
      }
      n.label = o["label"][0].get<std::string>();
      if (!o.contains("box") || !o["box"].is_array() || o["box"].size() != 4) {
        throw Error(ErrorCode::kSchema, where + ": \"box\" must hold 4 numbers");
      }
      std::array<double, 4> v{};
      for (std::size_t k = 0; k < 4; ++k) {
        if (!o["box"][k].is_number()) throw Error(ErrorCode::kSchema, where + ": bad box");
        v[k] = o["box"][k].get<double>();
      }
      n.box = MakeBox(BoxForm::kXyxy, v);
      if (o.contains("attributes")) {
        if (!o["attributes"].is_array()) {
          throw Error(ErrorCode::kSchema, where + ": \"attributes\" must be an array");
        }
        for (const auto& a : o["attributes"]) {
          if (!a.is_string()) throw Error(ErrorCode::kSchema, where + ": bad attribute");
          n.attributes.push_back(a.get<std::string>());
        }
      }
      n.caption = o.contains("caption") ? RequireString(o, "caption", where) : "";
      nodes.push_back(std::move(n));
    }
    std::vector<Edge> edges;
    if (doc.contains("relations")) {
      if (!doc["relations"].is_array()) {
        throw Error(ErrorCode::kSchema, "\"relations\" must be an array");
      }
      for (const auto& r : doc["relations"]) {
        const std::string where = "relation " + std::to_string(edges.size() + 1);
        if (!r.is_object()) throw Error(ErrorCode::kSchema, where + " is not an object");
        edges.push_back({RequireInt(r, "obj1", where), RequireInt(r, "obj2", where),
                         RequireString(r, "relation", where)});
      }
    }
    return SceneGraph(image_id, query_id, std::move(nodes), std::move(edges));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchema, e.what());
  }
}

}  // namespace groundgraph
