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

#ifndef GROUNDGRAPH_INFERENCE_H_
#define GROUNDGRAPH_INFERENCE_H_

#include <string>
#include <string_view>

#include "groundgraph/chat_backend.h"
#include "groundgraph/prompts.h"
#include "groundgraph/query_analysis.h"
#include "groundgraph/scene_graph.h"

namespace groundgraph {

struct Prediction {
  int index = 0;  // 1-based into the scene graph
  BBox box;       // copied from node(index)
  std::string explanation;
  std::string raw_response;
  bool fallback = false;  // answer needed recovery, or the last resort was used
  bool retried = false;
};

enum class TargetStatus {
  kOk,          // "TARGET: k" with k in range
  kRecovered,   // no TARGET line; last standalone in-range integer used
  kOutOfRange,  // TARGET line present but k outside [1, n]
  kFailure,
};

struct TargetParse {
  TargetStatus status = TargetStatus::kFailure;
  int index = 0;  // set only for kOk and kRecovered

  bool usable() const { return status == TargetStatus::kOk || status == TargetStatus::kRecovered; }
};

// Primary rule: the integer after the first "TARGET:" (case-insensitive).
// Recovery rule, only when no TARGET line carries an integer: the last
// standalone integer in [1, n]. Never yields an index outside [1, n].
TargetParse ParseTargetIndex(std::string_view response, int node_count);

// Text after "EXPLANATION:", or the whole trimmed response without it.
std::string ExtractExplanation(std::string_view response);

std::string BuildFinalPrompt(const Query& query, const SceneGraph& graph, GraphForm form,
                             const PromptSet& prompts);

// Appended to the prompt for the single re-ask.
std::string FormatReminder(int node_count);

struct InferenceOptions {
  GraphForm form = GraphForm::kJson;
  SamplingParams params{0.7, 0.8, 512};
};

// Asks once, re-asks once with a format reminder on an unusable answer, then
// falls back to node 1 with the fallback flag set.
Prediction InferTarget(const Query& query, const SceneGraph& graph, ChatBackend& llm,
                       const PromptSet& prompts, const InferenceOptions& options);

}  // namespace groundgraph

#endif  // GROUNDGRAPH_INFERENCE_H_
