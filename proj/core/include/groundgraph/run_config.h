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

#ifndef GROUNDGRAPH_RUN_CONFIG_H_
#define GROUNDGRAPH_RUN_CONFIG_H_

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "groundgraph/chat_backend.h"
#include "groundgraph/http_backend.h"
#include "groundgraph/scene_graph.h"

namespace groundgraph {

struct RoleConfig {
  BackendConfig backend;
  SamplingParams sampling;
};

inline RoleConfig DefaultRole(std::string api_key_env, bool vision, int max_tokens) {
  RoleConfig role;
  role.backend.api_key_env = std::move(api_key_env);
  role.backend.vision = vision;
  role.sampling.max_tokens = max_tokens;
  return role;
}

struct RunConfig {
  std::filesystem::path dataset;
  std::string split = "val";
  std::filesystem::path detections;
  std::filesystem::path images_root;
  std::filesystem::path embeddings;
  std::optional<std::size_t> embeddings_limit;
  std::filesystem::path categories;  // empty: the built-in COCO list
  std::filesystem::path prompts_dir;  // empty: built-in templates
  std::filesystem::path lexicon;      // extra "word TAG" lines for the tagger

  double tau = 0.5;
  double theta = 0.2;
  double min_category_similarity = 0.35;
  GraphForm form = GraphForm::kJson;
  bool selection_fallback = true;
  int caption_max_words = kDefaultMaxWords;
  int relation_max_words = kDefaultMaxWords;
  int stroke_width = kDefaultStrokeWidth;

  std::filesystem::path mock_script;  // when set, both roles are scripted
  RoleConfig vlm = DefaultRole("GG_VLM_API_KEY", true, 256);
  RoleConfig llm = DefaultRole("GG_LLM_API_KEY", false, 512);

  std::filesystem::path cache_dir;  // empty: no persistent cache
  std::filesystem::path out_dir;
  int concurrency = 4;

  // Relative paths resolve against base_dir. Unknown keys throw
  // Error(kConfig).
  static RunConfig FromJson(const nlohmann::json& j, const std::filesystem::path& base_dir);
  static RunConfig Load(const std::filesystem::path& path);

  // Endpoints left empty take GG_VLM_ENDPOINT / GG_LLM_ENDPOINT.
  void ApplyEnvironment();

  // Every problem found, in a stable order. Empty means valid.
  std::vector<std::string> Problems() const;
  // Throws Error(kConfig) listing all problems.
  void Validate() const;

  // Settings echoed into reports; paths and credentials are left out.
  nlohmann::ordered_json Echo() const;
};

}  // namespace groundgraph

#endif  // GROUNDGRAPH_RUN_CONFIG_H_
