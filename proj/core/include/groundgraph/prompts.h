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

#ifndef GROUNDGRAPH_PROMPTS_H_
#define GROUNDGRAPH_PROMPTS_H_

#include <array>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>

namespace groundgraph {

enum class PromptKind { kSubjectInference, kObjectCaption, kInteraction, kFinalInference };

inline constexpr std::array<PromptKind, 4> kAllPromptKinds = {
    PromptKind::kSubjectInference, PromptKind::kObjectCaption,
    PromptKind::kInteraction, PromptKind::kFinalInference};

// "subject_inference", "object_caption", "interaction", "final_inference".
std::string_view PromptName(PromptKind kind);

std::string_view DefaultTemplateText(PromptKind kind);

using PromptBindings = std::map<std::string, std::string, std::less<>>;

// Text with {placeholder} slots (lowercase identifiers). Braces that do not
// enclose an identifier are literal.
class PromptTemplate {
 public:
  PromptTemplate(std::string name, std::string text);

  const std::string& name() const { return name_; }
  const std::string& text() const { return text_; }
  const std::set<std::string>& placeholders() const { return placeholders_; }

  // Single-pass substitution; bound values are never re-scanned. Throws
  // Error(kInvalidArgument) naming the first missing placeholder.
  std::string Render(const PromptBindings& bindings) const;

 private:
  std::string name_;
  std::string text_;
  std::set<std::string> placeholders_;
};

class PromptSet {
 public:
  static PromptSet Defaults();

  // Defaults, overridden by any "<prompt name>.txt" present in `dir`.
  static PromptSet Load(const std::filesystem::path& dir);

  const PromptTemplate& Get(PromptKind kind) const;

 private:
  PromptSet();
  std::array<PromptTemplate, 4> templates_;
};

}  // namespace groundgraph

#endif  // GROUNDGRAPH_PROMPTS_H_
