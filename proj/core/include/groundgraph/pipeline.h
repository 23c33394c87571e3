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

#ifndef GROUNDGRAPH_PIPELINE_H_
#define GROUNDGRAPH_PIPELINE_H_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "groundgraph/chat_backend.h"
#include "groundgraph/embeddings.h"
#include "groundgraph/evaluation.h"
#include "groundgraph/object_grounding.h"
#include "groundgraph/pos_tagger.h"
#include "groundgraph/prompts.h"
#include "groundgraph/query_analysis.h"
#include "groundgraph/run_config.h"
#include "groundgraph/scene_graph.h"

namespace groundgraph {

// The knobs a sweep varies.
struct StageParams {
  double tau = 0.5;
  double theta = 0.2;
};

struct SampleOutcome {
  SampleResult result;
  std::optional<SceneGraph> graph;  // absent when the sample failed first
  QueryNames names;
  std::vector<BBox> selected_boxes;  // after any fallback
  int candidate_pairs = 0;
  std::vector<std::string> warnings;
};

// Loads every resource named by a validated RunConfig and runs samples through
// analysis, selection, graph construction and inference. Backend responses are
// memoized for the lifetime of the pipeline and persisted when cache_dir is
// set, so repeated stages cost nothing.
class Pipeline {
 public:
  // Throws Error(kConfig) listing every problem before loading anything.
  explicit Pipeline(const RunConfig& config);
  ~Pipeline();

  Pipeline(const Pipeline&) = delete;
  Pipeline& operator=(const Pipeline&) = delete;

  const RunConfig& config() const;
  const std::vector<Sample>& samples() const;
  const DetectionIndex& detections() const;
  const EmbeddingTable& table() const;
  const PosTagger& tagger() const;
  StageParams default_params() const;

  // Throws Error(kNotFound).
  const Sample& FindSample(const std::string& query_id) const;

  // Per-sample failures land in result.error rather than throwing.
  // stop_before_inference leaves the result without a target.
  SampleOutcome RunSample(const Sample& sample, const StageParams& params,
                          bool stop_before_inference = false);

  // Bounded worker pool; outcomes follow sample order.
  std::vector<SampleOutcome> RunAll(const StageParams& params);

  // Requests that reached the live or scripted backends.
  int backend_calls() const;
  // Requests answered by the persistent store.
  int cache_hits() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Full evaluation document for one run.
nlohmann::ordered_json BuildRunReport(const Pipeline& pipeline, const StageParams& params,
                                      const std::vector<SampleOutcome>& outcomes);

// Human-readable companion of BuildRunReport.
std::string FormatRunReport(const nlohmann::ordered_json& report);

enum class SweepParameter { kTau, kTheta };

// "tau" | "theta"; throws Error(kConfig).
SweepParameter ParseSweepParameter(std::string_view name);

struct SweepRow {
  double value = 0.0;
  SplitReport report;
  std::vector<int> selected;  // selection size per sample, sample order
  std::vector<int> pairs;     // candidate pairs per sample, sample order
};

// One full run per value over the same pipeline; unaffected stages are served
// from memory.
std::vector<SweepRow> Sweep(Pipeline& pipeline, SweepParameter parameter,
                            const std::vector<double>& values);

nlohmann::ordered_json SweepToJson(const Pipeline& pipeline, SweepParameter parameter,
                                   const std::vector<SweepRow>& rows);

}  // namespace groundgraph

#endif  // GROUNDGRAPH_PIPELINE_H_
