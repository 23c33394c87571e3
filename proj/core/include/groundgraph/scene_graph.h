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

#ifndef GROUNDGRAPH_SCENE_GRAPH_H_
#define GROUNDGRAPH_SCENE_GRAPH_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "groundgraph/chat_backend.h"
#include "groundgraph/geometry.h"
#include "groundgraph/image.h"
#include "groundgraph/object_grounding.h"
#include "groundgraph/prompts.h"

namespace groundgraph {

inline constexpr double kDefaultTheta = 0.2;
inline constexpr int kDefaultMaxWords = 60;
inline constexpr int kDefaultStrokeWidth = 3;

struct Node {
  int index = 0;  // 1-based
  std::string label;
  BBox box;
  std::vector<std::string> attributes;
  std::string caption;

  friend bool operator==(const Node&, const Node&) = default;
};

struct Edge {
  int obj1 = 0;
  int obj2 = 0;
  std::string relation;

  friend bool operator==(const Edge&, const Edge&) = default;
};

class SceneGraph {
 public:
  SceneGraph() = default;

  // Nodes must be indexed 1..n in order with valid boxes. Edges must join two
  // distinct existing nodes, carry a relation, and not repeat an unordered
  // pair; they are stored sorted by (obj1, obj2). Throws Error(kSchema).
  SceneGraph(std::string image_id, std::string query_id, std::vector<Node> nodes,
             std::vector<Edge> edges);

  const std::string& image_id() const { return image_id_; }
  const std::string& query_id() const { return query_id_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int size() const { return static_cast<int>(nodes_.size()); }

  // 1-based lookup; throws Error(kInvalidArgument) when out of range.
  const Node& node(int index) const;

  friend bool operator==(const SceneGraph&, const SceneGraph&) = default;

 private:
  std::string image_id_;
  std::string query_id_;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
};

// Equality of everything the Json form carries (boxes compared after
// rounding).
bool StructurallyEqual(const SceneGraph& a, const SceneGraph& b);

// Node i takes detection i-1. Throws Error(kInvalidArgument) on an empty
// selection.
std::vector<Node> AssignNodes(std::span<const Detection> selection);

struct InteractionConfig {
  double theta = kDefaultTheta;

  void Validate() const;
};

// Index pairs (i < j) whose overlap relative to the smaller box exceeds theta.
std::vector<std::pair<int, int>> CandidatePairs(std::span<const Node> nodes,
                                                const InteractionConfig& config);

// Whitespace-collapsed and cut to max_words words.
std::string NormalizeCaption(std::string_view raw, int max_words);

// First sentence, terminal punctuation dropped, cut to max_words words.
std::string NormalizeRelation(std::string_view raw, int max_words);

struct CaptionOptions {
  SamplingParams params;
  int max_words = kDefaultMaxWords;
};

struct CaptionOutcome {
  std::string caption;
  std::optional<std::string> warning;
};

// Captions the clamped crop of the node. A crop without whole pixels yields an
// empty caption and a warning, without contacting the backend.
CaptionOutcome CaptionNode(const Node& node, const Image& image, ChatBackend& vlm,
                           const PromptSet& prompts, const CaptionOptions& options);

// b1 outlined red, then b2 outlined blue on a copy. Throws
// Error(kInvalidArgument) for stroke_width <= 0.
Image HighlightPair(const Image& image, const BBox& b1, const BBox& b2,
                    int stroke_width = kDefaultStrokeWidth);

struct InteractionOptions {
  SamplingParams params;
  int max_words = kDefaultMaxWords;
  int stroke_width = kDefaultStrokeWidth;
};

struct InteractionOutcome {
  std::optional<Edge> edge;  // empty when the backend gave no relation
  std::optional<std::string> warning;
};

// The lower index is obj1 (red box), the higher obj2 (blue box).
InteractionOutcome InferInteraction(std::pair<int, int> pair, std::span<const Node> nodes,
                                    const Image& image, ChatBackend& vlm,
                                    const PromptSet& prompts,
                                    const InteractionOptions& options);

struct SceneGraphOptions {
  InteractionConfig interaction;
  CaptionOptions caption;
  InteractionOptions relation;
};

struct SceneGraphBuild {
  SceneGraph graph;
  int candidate_pairs = 0;
  std::vector<std::string> warnings;
};

// Nodes, captions, then interaction edges for one selection.
SceneGraphBuild GenerateSceneGraph(const std::string& image_id, const std::string& query_id,
                                   std::span<const Detection> selection, const Image& image,
                                   ChatBackend& vlm, const PromptSet& prompts,
                                   const SceneGraphOptions& options);

enum class GraphForm { kNaturalLanguage, kStructuredText, kJson };

// "natural_language" | "structured_text" | "json"; throws Error(kConfig).
GraphForm ParseGraphForm(std::string_view name);
std::string_view GraphFormName(GraphForm form);

// Json: {"image_id","query_id","objects":[{"id","label":[...],"box":[4 ints],
// "attributes","caption"}],"relations":[{"obj1","relation","obj2"}]}, compact,
// fixed key order. StructuredText: one labelled line per object and relation.
// NaturalLanguage: one caption line per object.
std::string Serialize(const SceneGraph& graph, GraphForm form);

// Inverse of Serialize(kJson). Unknown keys are ignored. Throws
// Error(kSchema).
SceneGraph ParseSceneGraphJson(std::string_view text);

}  // namespace groundgraph

#endif  // GROUNDGRAPH_SCENE_GRAPH_H_
