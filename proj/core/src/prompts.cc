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

#include "groundgraph/prompts.h"

#include <cctype>
#include <fstream>
#include <iterator>
#include <optional>

#include "groundgraph/error.h"

namespace groundgraph {
namespace {

constexpr std::string_view kSubjectInference =
    "Query: {query}\n"
    "Extract the subject of the query based on the image. "
    "Answer with the subject name only.";

constexpr std::string_view kObjectCaption =
    "Generate a descriptive caption for the {obj_name} in the image. "
    "Describe its attributes, actions, or interactions occurring in the image.";

constexpr std::string_view kInteraction =
    "Describe the relationship or interaction between the {obj1} (in the red "
    "box) and the {obj2} (in the blue box) in the image.";

constexpr std::string_view kFinalInference =
    "Scene graph:\n"
    "{scene_graph_json}\n"
    "\n"
    "Query: {query}\n"
    "\n"
    "Select the object in the scene graph that best matches the input query. "
    "Boxes are [x1, y1, x2, y2] pixel coordinates with the origin at the "
    "top-left corner of the image. Reply in exactly this format:\n"
    "TARGET: <id>\n"
    "EXPLANATION: <why this object matches the query>";

bool IsIdentStart(char c) { return (c >= 'a' && c <= 'z') || c == '_'; }
bool IsIdentChar(char c) { return IsIdentStart(c) || (c >= '0' && c <= '9'); }

// Length of the placeholder starting at text[i] == '{', or nullopt.
std::optional<std::size_t> PlaceholderAt(std::string_view text, std::size_t i) {
  if (text[i] != '{' || i + 1 >= text.size() || !IsIdentStart(text[i + 1])) {
    return std::nullopt;
  }
  std::size_t j = i + 1;
  while (j < text.size() && IsIdentChar(text[j])) ++j;
  if (j >= text.size() || text[j] != '}') return std::nullopt;
  return j - i + 1;
}

}  // namespace

std::string_view PromptName(PromptKind kind) {
  switch (kind) {
    case PromptKind::kSubjectInference: return "subject_inference";
    case PromptKind::kObjectCaption: return "object_caption";
    case PromptKind::kInteraction: return "interaction";
    case PromptKind::kFinalInference: return "final_inference";
  }
  return "";
}

std::string_view DefaultTemplateText(PromptKind kind) {
  switch (kind) {
    case PromptKind::kSubjectInference: return kSubjectInference;
    case PromptKind::kObjectCaption: return kObjectCaption;
    case PromptKind::kInteraction: return kInteraction;
    case PromptKind::kFinalInference: return kFinalInference;
  }
  return "";
}

PromptTemplate::PromptTemplate(std::string name, std::string text)
    : name_(std::move(name)), text_(std::move(text)) {
  for (std::size_t i = 0; i < text_.size(); ++i) {
    if (auto len = PlaceholderAt(text_, i)) {
      placeholders_.insert(text_.substr(i + 1, *len - 2));
      i += *len - 1;
    }
  }
}

std::string PromptTemplate::Render(const PromptBindings& bindings) const {
  for (const std::string& p : placeholders_) {
    if (!bindings.contains(p)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "prompt '" + name_ + "' is missing placeholder '" + p + "'");
    }
  }
  std::string out;
  out.reserve(text_.size());
  for (std::size_t i = 0; i < text_.size(); ++i) {
    if (auto len = PlaceholderAt(text_, i)) {
      out += bindings.find(std::string_view(text_).substr(i + 1, *len - 2))->second;
      i += *len - 1;
    } else {
      out.push_back(text_[i]);
    }
  }
  return out;
}

PromptSet::PromptSet()
    : templates_{PromptTemplate("subject_inference", std::string(kSubjectInference)),
                 PromptTemplate("object_caption", std::string(kObjectCaption)),
                 PromptTemplate("interaction", std::string(kInteraction)),
                 PromptTemplate("final_inference", std::string(kFinalInference))} {}

PromptSet PromptSet::Defaults() { return PromptSet(); }

PromptSet PromptSet::Load(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::kIo, "prompt directory not found: " + dir.string());
  }
  PromptSet set;
  for (PromptKind kind : kAllPromptKinds) {
    const auto file = dir / (std::string(PromptName(kind)) + ".txt");
    if (!std::filesystem::exists(file)) continue;
    std::ifstream in(file, std::ios::binary);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    // Editors append a final newline; it is not part of the prompt.
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    set.templates_[static_cast<std::size_t>(kind)] =
        PromptTemplate(std::string(PromptName(kind)), std::move(text));
  }
  return set;
}

const PromptTemplate& PromptSet::Get(PromptKind kind) const {
  return templates_[static_cast<std::size_t>(kind)];
}

}  // namespace groundgraph
