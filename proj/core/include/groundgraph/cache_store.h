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

#ifndef GROUNDGRAPH_CACHE_STORE_H_
#define GROUNDGRAPH_CACHE_STORE_H_

#include <array>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "groundgraph/chat_backend.h"

namespace groundgraph {

struct ChatExchange {
  std::string key;
  std::string model;
  std::string prompt;
  std::vector<std::string> image_digests;
  SamplingParams params;
  std::string response;
  std::string timestamp;  // ISO-8601 UTC
  double latency_ms = 0.0;
};

struct CacheStats {
  std::size_t entries = 0;
  std::uintmax_t bytes = 0;
};

// Content-addressed exchange store: <dir>/<key[0:2]>/<key>.json. Readers may
// run concurrently; writes go through a temp file and rename, serialized per
// key.
class CacheStore {
 public:
  explicit CacheStore(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path PathForKey(const std::string& key) const;

  // Throws Error(kCacheCorrupt) for an unreadable or mismatched record.
  std::optional<ChatExchange> Lookup(const std::string& key) const;
  void Store(const ChatExchange& exchange);

  // Both are no-ops on a missing directory.
  CacheStats Stats() const;
  void Purge();

 private:
  std::mutex& StripeFor(const std::string& key);

  std::filesystem::path dir_;
  std::array<std::mutex, 32> stripes_;
  std::atomic<std::uint64_t> temp_counter_{0};
};

// Answers from the store when possible, else asks `inner` and records the
// exchange. With a null store it only forwards.
class CachedChatBackend : public ChatBackend {
 public:
  CachedChatBackend(ChatBackend& inner, CacheStore* store);

  ChatResponse Chat(const ChatRequest& request) override;
  const std::string& model_id() const override { return inner_.model_id(); }
  bool vision_capable() const override { return inner_.vision_capable(); }

  int hits() const { return hits_.load(); }
  int misses() const { return misses_.load(); }

 private:
  ChatBackend& inner_;
  CacheStore* store_;
  std::atomic<int> hits_{0};
  std::atomic<int> misses_{0};
};

}  // namespace groundgraph

#endif  // GROUNDGRAPH_CACHE_STORE_H_
