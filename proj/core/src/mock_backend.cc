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

#include "groundgraph/mock_backend.h"

#include <fstream>
#include <iterator>

#include <nlohmann/json.hpp>

#include "groundgraph/error.h"

namespace groundgraph {

MockScript MockScript::Load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open mock script " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return FromJsonText(text);
}

MockScript MockScript::FromJsonText(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchema, std::string("mock script: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::kSchema, "mock script must be an object");
  MockScript script;
  try {
    script.model = doc.value("model", script.model);
    script.vision = doc.value("vision", script.vision);
    if (doc.contains("default") && !doc["default"].is_null()) {
      script.fallback = doc["default"].get<std::string>();
    }
    for (const auto& rule : doc.value("rules", nlohmann::json::array())) {
      script.rules.push_back(
          {rule.at("pattern").get<std::string>(), rule.at("response").get<std::string>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchema, std::string("mock script: ") + e.what());
  }
  return script;
}

MockChatBackend::MockChatBackend(MockScript script) : script_(std::move(script)) {
  compiled_.reserve(script_.rules.size());
  for (const auto& rule : script_.rules) {
    try {
      compiled_.emplace_back(rule.pattern, std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
      throw Error(ErrorCode::kConfig,
                  "invalid mock pattern '" + rule.pattern + "': " + e.what());
    }
  }
}

ChatResponse MockChatBackend::Chat(const ChatRequest& request) {
  CheckRequest(*this, request);
  ++calls_;
  for (std::size_t i = 0; i < compiled_.size(); ++i) {
    if (std::regex_search(request.prompt, compiled_[i])) {
      return {script_.rules[i].response, false};
    }
  }
  if (script_.fallback) return {*script_.fallback, false};
  throw Error(ErrorCode::kNoScript,
              "no scripted response for prompt " + Sha256Hex(request.prompt).substr(0, 16));
}

}  // namespace groundgraph
