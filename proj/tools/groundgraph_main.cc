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

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <glog/logging.h>

#include "groundgraph/commands.h"
#include "groundgraph/error.h"
#include "groundgraph/run_config.h"
#include "groundgraph/scene_graph.h"

namespace {

namespace fs = std::filesystem;
namespace gg = groundgraph;

// Flag values; unset ones leave the config file untouched.
struct Overrides {
  std::optional<std::string> dataset, split, detections, images_root, embeddings, categories,
      prompts_dir, lexicon, form, mock_script, cache_dir, out_dir;
  std::optional<std::string> vlm_endpoint, vlm_model, llm_endpoint, llm_model;
  std::optional<std::size_t> embeddings_limit;
  std::optional<double> tau, theta, min_category_similarity, temperature, top_p;
  std::optional<bool> selection_fallback;
  std::optional<int> caption_max_words, relation_max_words, stroke_width, concurrency;

  void Register(CLI::App& app) {
    app.add_option("--dataset", dataset, "Dataset JSONL file");
    app.add_option("--split", split, "Dataset split");
    app.add_option("--detections", detections, "Detections JSONL file");
    app.add_option("--images-root", images_root, "Directory holding the images");
    app.add_option("--embeddings", embeddings, "Binary word-embedding table");
    app.add_option("--embeddings-limit", embeddings_limit, "Load only the first N words");
    app.add_option("--categories", categories, "Category list, one per line");
    app.add_option("--prompts-dir", prompts_dir, "Directory of prompt templates");
    app.add_option("--lexicon", lexicon, "Extra tagger lexicon");
    app.add_option("--tau", tau, "Object selection threshold");
    app.add_option("--theta", theta, "Interaction overlap threshold");
    app.add_option("--min-category-similarity", min_category_similarity,
                   "Floor for noun to category mapping");
    app.add_option("--form", form, "Graph form for inference")
        ->check(CLI::IsMember({"json", "structured_text", "natural_language"}));
    app.add_option("--selection-fallback", selection_fallback,
                   "Use all detections when none match");
    app.add_option("--caption-max-words", caption_max_words, "Caption length cap");
    app.add_option("--relation-max-words", relation_max_words, "Relation length cap");
    app.add_option("--stroke-width", stroke_width, "Highlight stroke in pixels");
    app.add_option("--mock-script", mock_script, "Scripted backend for both roles");
    app.add_option("--vlm-endpoint", vlm_endpoint, "Vision model endpoint URL");
    app.add_option("--vlm-model", vlm_model, "Vision model id");
    app.add_option("--llm-endpoint", llm_endpoint, "Language model endpoint URL");
    app.add_option("--llm-model", llm_model, "Language model id");
    app.add_option("--temperature", temperature, "Sampling temperature for both roles");
    app.add_option("--top-p", top_p, "Nucleus sampling mass for both roles");
    app.add_option("--cache-dir", cache_dir, "Response cache directory");
    app.add_option("--out-dir", out_dir, "Output directory");
    app.add_option("--concurrency", concurrency, "Samples processed in parallel");
  }

  void Apply(gg::RunConfig& c) const {
    auto path = [](const std::optional<std::string>& v, fs::path& dst) {
      if (v) dst = *v;
    };
    path(dataset, c.dataset);
    path(detections, c.detections);
    path(images_root, c.images_root);
    path(embeddings, c.embeddings);
    path(categories, c.categories);
    path(prompts_dir, c.prompts_dir);
    path(lexicon, c.lexicon);
    path(mock_script, c.mock_script);
    path(cache_dir, c.cache_dir);
    path(out_dir, c.out_dir);
    if (split) c.split = *split;
    if (embeddings_limit) c.embeddings_limit = *embeddings_limit;
    if (tau) c.tau = *tau;
    if (theta) c.theta = *theta;
    if (min_category_similarity) c.min_category_similarity = *min_category_similarity;
    if (form) c.form = gg::ParseGraphForm(*form);
    if (selection_fallback) c.selection_fallback = *selection_fallback;
    if (caption_max_words) c.caption_max_words = *caption_max_words;
    if (relation_max_words) c.relation_max_words = *relation_max_words;
    if (stroke_width) c.stroke_width = *stroke_width;
    if (concurrency) c.concurrency = *concurrency;
    if (vlm_endpoint) c.vlm.backend.endpoint = *vlm_endpoint;
    if (vlm_model) c.vlm.backend.model = *vlm_model;
    if (llm_endpoint) c.llm.backend.endpoint = *llm_endpoint;
    if (llm_model) c.llm.backend.model = *llm_model;
    if (temperature) c.vlm.sampling.temperature = c.llm.sampling.temperature = *temperature;
    if (top_p) c.vlm.sampling.top_p = c.llm.sampling.top_p = *top_p;
  }
};

}  // namespace

int main(int argc, char** argv) {
  google::InitGoogleLogging(argv[0]);
  FLAGS_logtostderr = true;

  CLI::App app{"Ground referring expressions in detected objects"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  app.add_option("-c,--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  Overrides overrides;
  overrides.Register(app);

  auto* run = app.add_subcommand("run", "Run and evaluate every sample of the split");
  auto* graph = app.add_subcommand("graph", "Print one sample's scene graph");
  std::string query_id;
  graph->add_option("query_id", query_id, "Sample query id")->required();
  auto* sweep = app.add_subcommand("sweep", "Rerun the split over a range of one threshold");
  std::string parameter;
  std::vector<double> values;
  sweep->add_option("parameter", parameter, "tau or theta")
      ->required()
      ->check(CLI::IsMember({"tau", "theta"}));
  sweep->add_option("values", values, "Threshold values")->required()->delimiter(',');
  auto* cache = app.add_subcommand("cache", "Inspect or clear the response cache");
  std::string action;
  cache->add_option("action", action, "stats or purge")
      ->required()
      ->check(CLI::IsMember({"stats", "purge"}));

  CLI11_PARSE(app, argc, argv);

  gg::RunConfig config;
  try {
    if (!config_path.empty()) config = gg::RunConfig::Load(config_path);
    overrides.Apply(config);
    config.ApplyEnvironment();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  if (*run) return gg::CmdRun(config, std::cout, std::cerr);
  if (*graph) return gg::CmdGraph(config, query_id, std::cout, std::cerr);
  if (*sweep) return gg::CmdSweep(config, parameter, values, std::cout, std::cerr);
  if (*cache) return gg::CmdCache(config.cache_dir, action, std::cout, std::cerr);
  return 2;
}
