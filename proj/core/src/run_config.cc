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

#include "groundgraph/run_config.h"

#include <cstdlib>
#include <fstream>
#include <set>

#include "groundgraph/error.h"

namespace groundgraph {
namespace {

namespace fs = std::filesystem;

const std::set<std::string>& TopLevelKeys() {
  static const std::set<std::string> keys = {
      "dataset", "split", "detections", "images_root", "embeddings", "categories",
      "prompts_dir", "lexicon", "tau", "theta", "min_category_similarity", "form",
      "selection_fallback", "caption_max_words", "relation_max_words", "stroke_width",
      "mock_script", "vlm", "llm", "cache_dir", "out_dir", "concurrency"};
  return keys;
}

fs::path Resolve(const nlohmann::json& v, const fs::path& base, const std::string& key) {
  if (!v.is_string()) throw Error(ErrorCode::kConfig, "\"" + key + "\" must be a string path");
  fs::path p = v.get<std::string>();
  if (p.empty() || p.is_absolute()) return p;
  return base / p;
}

template <typename T>
T Get(const nlohmann::json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::kConfig, "\"" + key + "\" has the wrong type");
  }
}

void ReadSampling(const nlohmann::json& j, SamplingParams& p, const std::string& where) {
  for (const auto& [k, v] : j.items()) {
    if (k == "temperature") {
      p.temperature = Get<double>(v, where + ".temperature");
    } else if (k == "top_p") {
      p.top_p = Get<double>(v, where + ".top_p");
    } else if (k == "max_tokens") {
      p.max_tokens = Get<int>(v, where + ".max_tokens");
    } else {
      throw Error(ErrorCode::kConfig, "unknown key \"" + where + "." + k + "\"");
    }
  }
}

void ReadRole(const nlohmann::json& j, RoleConfig& role, const std::string& where) {
  if (!j.is_object()) throw Error(ErrorCode::kConfig, "\"" + where + "\" must be an object");
  for (const auto& [k, v] : j.items()) {
    const std::string key = where + "." + k;
    if (k == "endpoint") {
      role.backend.endpoint = Get<std::string>(v, key);
    } else if (k == "model") {
      role.backend.model = Get<std::string>(v, key);
    } else if (k == "api_key_env") {
      role.backend.api_key_env = Get<std::string>(v, key);
    } else if (k == "timeout_s") {
      role.backend.timeout_s = Get<double>(v, key);
    } else if (k == "retries") {
      role.backend.retries = Get<int>(v, key);
    } else if (k == "concurrency") {
      role.backend.concurrency = Get<int>(v, key);
    } else if (k == "vision") {
      role.backend.vision = Get<bool>(v, key);
    } else if (k == "sampling") {
      ReadSampling(v, role.sampling, key);
    } else {
      throw Error(ErrorCode::kConfig, "unknown key \"" + key + "\"");
    }
  }
}

void CheckFile(std::vector<std::string>& problems, const fs::path& p, const char* key) {
  if (p.empty()) {
    problems.push_back(std::string(key) + " is not set");
  } else if (!fs::is_regular_file(p)) {
    problems.push_back(std::string(key) + " does not exist: " + p.string());
  }
}

void CheckOptionalFile(std::vector<std::string>& problems, const fs::path& p, const char* key) {
  if (!p.empty() && !fs::is_regular_file(p)) {
    problems.push_back(std::string(key) + " does not exist: " + p.string());
  }
}

void CheckRole(std::vector<std::string>& problems, const RoleConfig& role, const char* name) {
  try {
    role.sampling.Validate();
  } catch (const Error& e) {
    problems.push_back(std::string(name) + " sampling: " + e.what());
  }
}

nlohmann::ordered_json SamplingJson(const SamplingParams& p) {
  nlohmann::ordered_json j;
  j["temperature"] = p.temperature;
  j["top_p"] = p.top_p;
  j["max_tokens"] = p.max_tokens;
  return j;
}

}  // namespace

RunConfig RunConfig::FromJson(const nlohmann::json& j, const fs::path& base) {
  if (!j.is_object()) throw Error(ErrorCode::kConfig, "config must be a JSON object");
  RunConfig c;
  for (const auto& [k, v] : j.items()) {
    if (!TopLevelKeys().contains(k)) throw Error(ErrorCode::kConfig, "unknown key \"" + k + "\"");
  }
  if (j.contains("dataset")) c.dataset = Resolve(j["dataset"], base, "dataset");
  if (j.contains("split")) c.split = Get<std::string>(j["split"], "split");
  if (j.contains("detections")) c.detections = Resolve(j["detections"], base, "detections");
  if (j.contains("images_root")) c.images_root = Resolve(j["images_root"], base, "images_root");
  if (j.contains("embeddings")) {
    const auto& e = j["embeddings"];
    if (e.is_string()) {
      c.embeddings = Resolve(e, base, "embeddings");
    } else if (e.is_object()) {
      if (e.contains("path")) c.embeddings = Resolve(e["path"], base, "embeddings.path");
      if (e.contains("limit") && !e["limit"].is_null()) {
        c.embeddings_limit = Get<std::size_t>(e["limit"], "embeddings.limit");
      }
    } else {
      throw Error(ErrorCode::kConfig, "\"embeddings\" must be a path or an object");
    }
  }
  if (j.contains("categories")) c.categories = Resolve(j["categories"], base, "categories");
  if (j.contains("prompts_dir")) c.prompts_dir = Resolve(j["prompts_dir"], base, "prompts_dir");
  if (j.contains("lexicon")) c.lexicon = Resolve(j["lexicon"], base, "lexicon");
  if (j.contains("tau")) c.tau = Get<double>(j["tau"], "tau");
  if (j.contains("theta")) c.theta = Get<double>(j["theta"], "theta");
  if (j.contains("min_category_similarity")) {
    c.min_category_similarity =
        Get<double>(j["min_category_similarity"], "min_category_similarity");
  }
  if (j.contains("form")) c.form = ParseGraphForm(Get<std::string>(j["form"], "form"));
  if (j.contains("selection_fallback")) {
    c.selection_fallback = Get<bool>(j["selection_fallback"], "selection_fallback");
  }
  if (j.contains("caption_max_words")) {
    c.caption_max_words = Get<int>(j["caption_max_words"], "caption_max_words");
  }
  if (j.contains("relation_max_words")) {
    c.relation_max_words = Get<int>(j["relation_max_words"], "relation_max_words");
  }
  if (j.contains("stroke_width")) c.stroke_width = Get<int>(j["stroke_width"], "stroke_width");
  if (j.contains("mock_script")) c.mock_script = Resolve(j["mock_script"], base, "mock_script");
  if (j.contains("vlm")) ReadRole(j["vlm"], c.vlm, "vlm");
  if (j.contains("llm")) ReadRole(j["llm"], c.llm, "llm");
  if (j.contains("cache_dir")) c.cache_dir = Resolve(j["cache_dir"], base, "cache_dir");
  if (j.contains("out_dir")) c.out_dir = Resolve(j["out_dir"], base, "out_dir");
  if (j.contains("concurrency")) c.concurrency = Get<int>(j["concurrency"], "concurrency");
  return c;
}

RunConfig RunConfig::Load(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfig, path.string() + ": " + e.what());
  }
  return FromJson(j, path.parent_path());
}

void RunConfig::ApplyEnvironment() {
  if (vlm.backend.endpoint.empty()) {
    if (const char* v = std::getenv("GG_VLM_ENDPOINT")) vlm.backend.endpoint = v;
  }
  if (llm.backend.endpoint.empty()) {
    if (const char* v = std::getenv("GG_LLM_ENDPOINT")) llm.backend.endpoint = v;
  }
}

std::vector<std::string> RunConfig::Problems() const {
  std::vector<std::string> p;
  CheckFile(p, dataset, "dataset");
  if (split.empty()) p.push_back("split is empty");
  CheckFile(p, detections, "detections");
  if (images_root.empty()) {
    p.push_back("images_root is not set");
  } else if (!fs::is_directory(images_root)) {
    p.push_back("images_root is not a directory: " + images_root.string());
  }
  CheckFile(p, embeddings, "embeddings");
  CheckOptionalFile(p, categories, "categories");
  if (!prompts_dir.empty() && !fs::is_directory(prompts_dir)) {
    p.push_back("prompts_dir is not a directory: " + prompts_dir.string());
  }
  CheckOptionalFile(p, lexicon, "lexicon");
  if (!(tau >= 0.0 && tau <= 1.0)) p.push_back("tau must lie in [0, 1]");
  if (!(theta >= 0.0 && theta <= 1.0)) p.push_back("theta must lie in [0, 1]");
  if (!(min_category_similarity >= -1.0 && min_category_similarity <= 1.0)) {
    p.push_back("min_category_similarity must lie in [-1, 1]");
  }
  if (caption_max_words < 1) p.push_back("caption_max_words must be positive");
  if (relation_max_words < 1) p.push_back("relation_max_words must be positive");
  if (stroke_width < 1) p.push_back("stroke_width must be positive");
  if (concurrency < 1) p.push_back("concurrency must be positive");
  if (mock_script.empty()) {
    for (const auto* role : {&vlm, &llm}) {
      const char* name = role == &vlm ? "vlm" : "llm";
      try {
        role->backend.Validate();
      } catch (const Error& e) {
        p.push_back(std::string(name) + ": " + e.what());
      }
    }
    if (!vlm.backend.vision) p.push_back("vlm: backend must be vision-capable");
  } else {
    CheckFile(p, mock_script, "mock_script");
  }
  CheckRole(p, vlm, "vlm");
  CheckRole(p, llm, "llm");
  if (out_dir.empty()) p.push_back("out_dir is not set");
  return p;
}

void RunConfig::Validate() const {
  const auto problems = Problems();
  if (problems.empty()) return;
  std::string msg = "invalid configuration:";
  for (const auto& s : problems) msg += "\n  - " + s;
  throw Error(ErrorCode::kConfig, msg);
}

nlohmann::ordered_json RunConfig::Echo() const {
  nlohmann::ordered_json j;
  j["split"] = split;
  j["tau"] = tau;
  j["theta"] = theta;
  j["min_category_similarity"] = min_category_similarity;
  j["form"] = std::string(GraphFormName(form));
  j["selection_fallback"] = selection_fallback;
  j["caption_max_words"] = caption_max_words;
  j["relation_max_words"] = relation_max_words;
  j["stroke_width"] = stroke_width;
  j["embeddings_limit"] =
      embeddings_limit ? nlohmann::ordered_json(*embeddings_limit) : nlohmann::ordered_json();
  j["vlm"] = {{"model", mock_script.empty() ? vlm.backend.model : "mock"},
              {"sampling", SamplingJson(vlm.sampling)}};
  j["llm"] = {{"model", mock_script.empty() ? llm.backend.model : "mock"},
              {"sampling", SamplingJson(llm.sampling)}};
  return j;
}

}  // namespace groundgraph
