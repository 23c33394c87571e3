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

#include "groundgraph/inference.h"

#include <cctype>
#include <limits>
#include <optional>

#include "groundgraph/error.h"
#include "groundgraph/text_util.h"

namespace groundgraph {
namespace {

bool IsDigit(char c) { return c >= '0' && c <= '9'; }
bool IsAlnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

// Digits starting at `pos`, saturated well above any node count.
long long ReadNumber(std::string_view s, std::size_t& pos) {
  long long v = 0;
  while (pos < s.size() && IsDigit(s[pos])) {
    v = std::min<long long>(v * 10 + (s[pos] - '0'), std::numeric_limits<int>::max());
    ++pos;
  }
  return v;
}

std::optional<long long> TargetValue(std::string_view response) {
  const std::string lower = ToLower(response);
  std::size_t from = 0;
  while (true) {
    const std::size_t at = lower.find("target:", from);
    if (at == std::string::npos) return std::nullopt;
    std::size_t pos = at + 7;
    while (pos < lower.size() &&
           (lower[pos] == ' ' || lower[pos] == '\t' || lower[pos] == '<' ||
            lower[pos] == '[' || lower[pos] == '*' || lower[pos] == '#')) {
      ++pos;
    }
    if (pos < lower.size() && IsDigit(lower[pos])) return ReadNumber(lower, pos);
    if (pos + 1 < lower.size() && lower[pos] == '-' && IsDigit(lower[pos + 1])) {
      ++pos;
      return -ReadNumber(lower, pos);
    }
    from = at + 7;
  }
}

}  // namespace

TargetParse ParseTargetIndex(std::string_view response, int node_count) {
  if (node_count < 1) {
    throw Error(ErrorCode::kInvalidArgument, "node count must be at least 1");
  }
  if (auto value = TargetValue(response)) {
    if (*value >= 1 && *value <= node_count) {
      return {TargetStatus::kOk, static_cast<int>(*value)};
    }
    return {TargetStatus::kOutOfRange, 0};
  }
  std::optional<int> last;
  for (std::size_t i = 0; i < response.size();) {
    if (!IsDigit(response[i])) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    const long long v = ReadNumber(response, i);
    const bool glued_before =
        start > 0 && (IsAlnum(response[start - 1]) || response[start - 1] == '-' ||
                      (response[start - 1] == '.' && start > 1 && IsDigit(response[start - 2])));
    const bool glued_after =
        i < response.size() &&
        (IsAlnum(response[i]) ||
         (response[i] == '.' && i + 1 < response.size() && IsDigit(response[i + 1])));
    if (!glued_before && !glued_after && v >= 1 && v <= node_count) {
      last = static_cast<int>(v);
    }
  }
  if (last) return {TargetStatus::kRecovered, *last};
  return {TargetStatus::kFailure, 0};
}

std::string ExtractExplanation(std::string_view response) {
  const std::string lower = ToLower(response);
  if (const std::size_t at = lower.find("explanation:"); at != std::string::npos) {
    return std::string(Trim(response.substr(at + 12)));
  }
  return std::string(Trim(response));
}

std::string BuildFinalPrompt(const Query& query, const SceneGraph& graph, GraphForm form,
                             const PromptSet& prompts) {
  return prompts.Get(PromptKind::kFinalInference)
      .Render({{"query", query.text}, {"scene_graph_json", Serialize(graph, form)}});
}

std::string FormatReminder(int node_count) {
  return "\n\nYour previous answer could not be used. Answer with one object id "
         "between 1 and " +
         std::to_string(node_count) +
         ", exactly in this format:\nTARGET: <id>\nEXPLANATION: <text>";
}

Prediction InferTarget(const Query& query, const SceneGraph& graph, ChatBackend& llm,
                       const PromptSet& prompts, const InferenceOptions& options) {
  if (graph.size() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "scene graph has no objects");
  }
  ChatRequest request;
  request.prompt = BuildFinalPrompt(query, graph, options.form, prompts);
  request.params = options.params;

  Prediction prediction;
  for (int attempt = 0; attempt < 2; ++attempt) {
    if (attempt == 1) {
      request.prompt += FormatReminder(graph.size());
      prediction.retried = true;
    }
    prediction.raw_response = llm.Chat(request).text;
    const TargetParse parse = ParseTargetIndex(prediction.raw_response, graph.size());
    if (parse.usable()) {
      prediction.index = parse.index;
      prediction.fallback = parse.status == TargetStatus::kRecovered;
      prediction.box = graph.node(parse.index).box;
      prediction.explanation = ExtractExplanation(prediction.raw_response);
      return prediction;
    }
  }
  prediction.index = 1;
  prediction.fallback = true;
  prediction.box = graph.node(1).box;
  prediction.explanation = ExtractExplanation(prediction.raw_response);
  return prediction;
}

}  // namespace groundgraph
