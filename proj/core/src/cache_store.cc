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

#include "groundgraph/cache_store.h"

#include <chrono>
#include <ctime>
#include <fstream>
#include <functional>
#include <iterator>
#include <thread>

#include <nlohmann/json.hpp>

#include "groundgraph/error.h"

namespace groundgraph {
namespace {

namespace fs = std::filesystem;

nlohmann::ordered_json ToJson(const ChatExchange& e) {
  nlohmann::ordered_json j;
  j["key"] = e.key;
  j["model"] = e.model;
  j["prompt"] = e.prompt;
  j["image_digests"] = e.image_digests;
  j["params"] = {{"temperature", e.params.temperature},
                 {"top_p", e.params.top_p},
                 {"max_tokens", e.params.max_tokens}};
  j["response"] = e.response;
  j["timestamp"] = e.timestamp;
  j["latency_ms"] = e.latency_ms;
  return j;
}

ChatExchange FromJson(const nlohmann::json& j) {
  ChatExchange e;
  e.key = j.at("key").get<std::string>();
  e.model = j.at("model").get<std::string>();
  e.prompt = j.at("prompt").get<std::string>();
  e.image_digests = j.at("image_digests").get<std::vector<std::string>>();
  const auto& p = j.at("params");
  e.params.temperature = p.at("temperature").get<double>();
  e.params.top_p = p.at("top_p").get<double>();
  e.params.max_tokens = p.at("max_tokens").get<int>();
  e.response = j.at("response").get<std::string>();
  e.timestamp = j.value("timestamp", "");
  e.latency_ms = j.value("latency_ms", 0.0);
  return e;
}

std::string UtcNow() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool IsHexKey(const std::string& key) {
  if (key.size() < 3) return false;
  for (char c : key) {
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
  }
  return true;
}

}  // namespace

CacheStore::CacheStore(fs::path dir) : dir_(std::move(dir)) {}

fs::path CacheStore::PathForKey(const std::string& key) const {
  if (!IsHexKey(key)) {
    throw Error(ErrorCode::kInvalidArgument, "cache keys are lowercase hex digests");
  }
  return dir_ / key.substr(0, 2) / (key + ".json");
}

std::mutex& CacheStore::StripeFor(const std::string& key) {
  return stripes_[std::hash<std::string>{}(key) % stripes_.size()];
}

std::optional<ChatExchange> CacheStore::Lookup(const std::string& key) const {
  const fs::path path = PathForKey(key);
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  ChatExchange e;
  try {
    e = FromJson(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::kCacheCorrupt, path.string() + ": " + ex.what());
  }
  if (e.key != key) {
    throw Error(ErrorCode::kCacheCorrupt, path.string() + ": record key does not match file");
  }
  return e;
}

void CacheStore::Store(const ChatExchange& exchange) {
  const fs::path path = PathForKey(exchange.key);
  std::lock_guard lock(StripeFor(exchange.key));
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + path.parent_path().string());
  const fs::path temp =
      path.string() + ".tmp" + std::to_string(temp_counter_.fetch_add(1)) + "." +
      std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    out << ToJson(exchange).dump(2, ' ', false, nlohmann::json::error_handler_t::replace)
        << '\n';
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + temp.string());
  }
  fs::rename(temp, path, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot rename into " + path.string());
}

CacheStats CacheStore::Stats() const {
  CacheStats stats;
  std::error_code ec;
  if (!fs::is_directory(dir_, ec)) return stats;
  for (const auto& entry : fs::recursive_directory_iterator(dir_, ec)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
    ++stats.entries;
    stats.bytes += entry.file_size();
  }
  return stats;
}

void CacheStore::Purge() {
  std::error_code ec;
  if (!fs::is_directory(dir_, ec)) return;
  for (const auto& entry : fs::directory_iterator(dir_, ec)) {
    const std::string name = entry.path().filename().string();
    // Only the two-hex-digit shard directories belong to the store.
    if (entry.is_directory() && name.size() == 2 && IsHexKey(name + "0")) {
      fs::remove_all(entry.path(), ec);
    }
  }
}

CachedChatBackend::CachedChatBackend(ChatBackend& inner, CacheStore* store)
    : inner_(inner), store_(store) {}

ChatResponse CachedChatBackend::Chat(const ChatRequest& request) {
  CheckRequest(*this, request);
  if (store_ == nullptr) return inner_.Chat(request);

  const std::string key = CacheKey(inner_.model_id(), request);
  if (auto hit = store_->Lookup(key)) {
    ++hits_;
    return {hit->response, true};
  }
  const auto start = std::chrono::steady_clock::now();
  ChatResponse response = inner_.Chat(request);
  const auto elapsed = std::chrono::steady_clock::now() - start;
  ++misses_;

  ChatExchange exchange;
  exchange.key = key;
  exchange.model = inner_.model_id();
  exchange.prompt = request.prompt;
  for (const auto& img : request.images) exchange.image_digests.push_back(img.Digest());
  exchange.params = request.params;
  exchange.response = response.text;
  exchange.timestamp = UtcNow();
  exchange.latency_ms = std::chrono::duration<double, std::milli>(elapsed).count();
  store_->Store(exchange);
  return {response.text, false};
}

}  // namespace groundgraph
