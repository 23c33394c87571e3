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

#ifndef GROUNDGRAPH_TESTS_TESTING_BACKENDS_H_
#define GROUNDGRAPH_TESTS_TESTING_BACKENDS_H_

#include <deque>
#include <mutex>
#include <string>
#include <vector>

#include "groundgraph/chat_backend.h"
#include "groundgraph/error.h"

namespace groundgraph::testing {

// Replies from a queue (or a fixed text once the queue is empty) and keeps
// every request.
class RecordingBackend : public ChatBackend {
 public:
  explicit RecordingBackend(std::deque<std::string> replies = {}, std::string fallback = "",
                            bool vision = true)
      : replies_(std::move(replies)), fallback_(std::move(fallback)), vision_(vision) {}

  ChatResponse Chat(const ChatRequest& request) override {
    CheckRequest(*this, request);
    std::lock_guard lock(mu_);
    requests_.push_back(request);
    if (replies_.empty()) return {fallback_, false};
    std::string text = std::move(replies_.front());
    replies_.pop_front();
    return {text, false};
  }
  const std::string& model_id() const override { return model_; }
  bool vision_capable() const override { return vision_; }

  const std::vector<ChatRequest>& requests() const { return requests_; }

 private:
  std::mutex mu_;
  std::deque<std::string> replies_;
  std::string fallback_;
  bool vision_;
  std::string model_ = "recording";
  std::vector<ChatRequest> requests_;
};

}  // namespace groundgraph::testing

#endif  // GROUNDGRAPH_TESTS_TESTING_BACKENDS_H_
