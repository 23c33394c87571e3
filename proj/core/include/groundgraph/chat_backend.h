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

#ifndef GROUNDGRAPH_CHAT_BACKEND_H_
#define GROUNDGRAPH_CHAT_BACKEND_H_

#include <atomic>
#include <string>
#include <string_view>
#include <vector>

namespace groundgraph {

struct SamplingParams {
  double temperature = 0.7;
  double top_p = 0.8;
  int max_tokens = 256;

  // Throws Error(kConfig) when a field is out of range.
  void Validate() const;

  friend bool operator==(const SamplingParams&, const SamplingParams&) = default;
};

struct EncodedImage {
  std::string mime_type = "image/png";
  std::string bytes;

  // Hex SHA-256 of the bytes.
  std::string Digest() const;
};

struct ChatRequest {
  std::string prompt;
  std::vector<EncodedImage> images;
  SamplingParams params;
};

struct ChatResponse {
  std::string text;
  bool from_cache = false;
};

// A chat-model endpoint. Implementations must be safe to call from several
// threads at once.
class ChatBackend {
 public:
  virtual ~ChatBackend() = default;

  virtual ChatResponse Chat(const ChatRequest& request) = 0;
  virtual const std::string& model_id() const = 0;
  virtual bool vision_capable() const = 0;
};

// Rejects images sent to a text-only backend and invalid sampling params.
void CheckRequest(const ChatBackend& backend, const ChatRequest& request);

std::string Sha256Hex(std::string_view bytes);
std::string Base64Encode(std::string_view bytes);

// Content hash over the canonical JSON of (model id, prompt, image digests,
// sampling params).
std::string CacheKey(std::string_view model_id, const ChatRequest& request);

// Forwards to another backend and tallies traffic; used to attribute calls
// and cache hits to one sample.
class CountingBackend : public ChatBackend {
 public:
  explicit CountingBackend(ChatBackend& inner) : inner_(inner) {}

  ChatResponse Chat(const ChatRequest& request) override;
  const std::string& model_id() const override { return inner_.model_id(); }
  bool vision_capable() const override { return inner_.vision_capable(); }

  int calls() const { return calls_.load(); }
  int cache_hits() const { return cache_hits_.load(); }

 private:
  ChatBackend& inner_;
  std::atomic<int> calls_{0};
  std::atomic<int> cache_hits_{0};
};

}  // namespace groundgraph

#endif  // GROUNDGRAPH_CHAT_BACKEND_H_
