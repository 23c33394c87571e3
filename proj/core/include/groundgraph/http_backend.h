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

#ifndef GROUNDGRAPH_HTTP_BACKEND_H_
#define GROUNDGRAPH_HTTP_BACKEND_H_

#include <atomic>
#include <memory>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "groundgraph/chat_backend.h"

namespace groundgraph {

struct BackendConfig {
  std::string endpoint;     // e.g. http://localhost:8000/v1/chat/completions
  std::string model;
  std::string api_key_env;  // name of the variable holding the bearer token
  double timeout_s = 120.0;
  int retries = 2;
  int backoff_initial_ms = 500;
  int backoff_max_ms = 8000;
  int concurrency = 4;
  bool vision = false;

  // Throws Error(kConfig).
  void Validate() const;
};

// Chat-completion request body:
//   {model, messages:[{role:"user", content}], temperature, top_p, max_tokens}
// where content is the prompt string, or a list of text / image_url parts
// (base64 data URLs) when images are attached.
nlohmann::ordered_json BuildChatBody(std::string_view model, const ChatRequest& request);

// Text of choices[0].message.content. Throws Error(kSchema).
std::string ParseChatResponseBody(std::string_view body);

// Chat over HTTP(S) with exponential-backoff retries on transport errors,
// 408, 425, 429 and 5xx. Other statuses fail immediately.
class HttpChatBackend : public ChatBackend {
 public:
  explicit HttpChatBackend(BackendConfig config);
  ~HttpChatBackend() override;

  ChatResponse Chat(const ChatRequest& request) override;
  const std::string& model_id() const override { return config_.model; }
  bool vision_capable() const override { return config_.vision; }

  // Every HTTP attempt, including retries.
  int attempts() const { return attempts_.load(); }

 private:
  struct Endpoint;
  class Limiter;

  BackendConfig config_;
  std::unique_ptr<Endpoint> endpoint_;
  std::unique_ptr<Limiter> limiter_;
  std::atomic<int> attempts_{0};
};

}  // namespace groundgraph

#endif  // GROUNDGRAPH_HTTP_BACKEND_H_
