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

#ifndef GROUNDGRAPH_MOCK_BACKEND_H_
#define GROUNDGRAPH_MOCK_BACKEND_H_

#include <atomic>
#include <filesystem>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "groundgraph/chat_backend.h"

namespace groundgraph {

struct MockRule {
  std::string pattern;  // ECMAScript regex, searched anywhere in the prompt
  std::string response;
};

// Scripted answers for tests and desk runs. JSON layout:
//   {"model": "mock", "vision": true,
//    "rules": [{"pattern": "...", "response": "..."}], "default": "..."}
struct MockScript {
  std::string model = "mock";
  bool vision = true;
  std::vector<MockRule> rules;
  std::optional<std::string> fallback;

  static MockScript Load(const std::filesystem::path& path);
  static MockScript FromJsonText(std::string_view text);
};

// Answers with the first rule whose pattern matches, else the default. Pixels
// are ignored.
class MockChatBackend : public ChatBackend {
 public:
  explicit MockChatBackend(MockScript script);

  // Throws Error(kNoScript) naming the prompt hash when nothing matches and
  // there is no default.
  ChatResponse Chat(const ChatRequest& request) override;
  const std::string& model_id() const override { return script_.model; }
  bool vision_capable() const override { return script_.vision; }

  int calls() const { return calls_.load(); }

 private:
  MockScript script_;
  std::vector<std::regex> compiled_;
  std::atomic<int> calls_{0};
};

}  // namespace groundgraph

#endif  // GROUNDGRAPH_MOCK_BACKEND_H_
