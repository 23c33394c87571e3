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

#include "groundgraph/http_backend.h"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <semaphore>
#include <thread>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <glog/logging.h>
#include <httplib.h>

#include "groundgraph/error.h"

namespace groundgraph {

struct HttpChatBackend::Endpoint {
  std::string scheme_host_port;
  std::string path;
};

class HttpChatBackend::Limiter {
 public:
  explicit Limiter(int permits) : sem_(permits) {}
  void Acquire() { sem_.acquire(); }
  void Release() { sem_.release(); }

 private:
  std::counting_semaphore<4096> sem_;
};

namespace {

bool IsRetryableStatus(int status) {
  return status == 408 || status == 425 || status == 429 || status >= 500;
}

}  // namespace

void BackendConfig::Validate() const {
  if (endpoint.empty()) throw Error(ErrorCode::kConfig, "backend endpoint is empty");
  if (endpoint.rfind("http://", 0) != 0 && endpoint.rfind("https://", 0) != 0) {
    throw Error(ErrorCode::kConfig, "endpoint must start with http:// or https://");
  }
  if (model.empty()) throw Error(ErrorCode::kConfig, "backend model is empty");
  if (!(timeout_s > 0)) throw Error(ErrorCode::kConfig, "timeout must be positive");
  if (retries < 0) throw Error(ErrorCode::kConfig, "retries must be >= 0");
  if (concurrency <= 0 || concurrency > 4096) {
    throw Error(ErrorCode::kConfig, "concurrency must lie in [1, 4096]");
  }
  if (backoff_initial_ms < 0 || backoff_max_ms < backoff_initial_ms) {
    throw Error(ErrorCode::kConfig, "invalid backoff settings");
  }
}

nlohmann::ordered_json BuildChatBody(std::string_view model, const ChatRequest& request) {
  nlohmann::ordered_json message;
  message["role"] = "user";
  if (request.images.empty()) {
    message["content"] = request.prompt;
  } else {
    auto parts = nlohmann::ordered_json::array();
    parts.push_back({{"type", "text"}, {"text", request.prompt}});
    for (const auto& img : request.images) {
      parts.push_back(
          {{"type", "image_url"},
           {"image_url",
            {{"url", "data:" + img.mime_type + ";base64," + Base64Encode(img.bytes)}}}});
    }
    message["content"] = std::move(parts);
  }
  nlohmann::ordered_json body;
  body["model"] = model;
  body["messages"] = nlohmann::ordered_json::array({std::move(message)});
  body["temperature"] = request.params.temperature;
  body["top_p"] = request.params.top_p;
  body["max_tokens"] = request.params.max_tokens;
  return body;
}

std::string ParseChatResponseBody(std::string_view body) {
  try {
    const auto doc = nlohmann::json::parse(body);
    const auto& content = doc.at("choices").at(0).at("message").at("content");
    if (content.is_string()) return content.get<std::string>();
    if (content.is_null()) return "";
    std::string text;
    for (const auto& part : content) {
      if (part.value("type", "") == "text") text += part.value("text", "");
    }
    return text;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchema, std::string("unexpected chat response: ") + e.what());
  }
}

HttpChatBackend::HttpChatBackend(BackendConfig config) : config_(std::move(config)) {
  config_.Validate();
  const std::size_t scheme_end = config_.endpoint.find("://") + 3;
  const std::size_t slash = config_.endpoint.find('/', scheme_end);
  endpoint_ = std::make_unique<Endpoint>();
  if (slash == std::string::npos) {
    endpoint_->scheme_host_port = config_.endpoint;
    endpoint_->path = "/";
  } else {
    endpoint_->scheme_host_port = config_.endpoint.substr(0, slash);
    endpoint_->path = config_.endpoint.substr(slash);
  }
  if (endpoint_->path == "/") endpoint_->path = "/v1/chat/completions";
  limiter_ = std::make_unique<Limiter>(config_.concurrency);
}

HttpChatBackend::~HttpChatBackend() = default;

ChatResponse HttpChatBackend::Chat(const ChatRequest& request) {
  CheckRequest(*this, request);
  const std::string body = BuildChatBody(config_.model, request)
                               .dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
  httplib::Headers headers;
  if (!config_.api_key_env.empty()) {
    if (const char* key = std::getenv(config_.api_key_env.c_str()); key && *key) {
      headers.emplace("Authorization", std::string("Bearer ") + key);
    }
  }

  limiter_->Acquire();
  struct Release {
    Limiter* l;
    ~Release() { l->Release(); }
  } release{limiter_.get()};

  httplib::Client client(endpoint_->scheme_host_port);
  const auto timeout = std::chrono::duration<double>(config_.timeout_s);
  client.set_connection_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
  client.set_read_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
  client.set_write_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));

  const int max_attempts = config_.retries + 1;
  std::string last_error;
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    ++attempts_;
    auto result = client.Post(endpoint_->path, headers, body, "application/json");
    if (!result) {
      last_error = "transport error: " + httplib::to_string(result.error());
    } else if (result->status >= 200 && result->status < 300) {
      return {ParseChatResponseBody(result->body), false};
    } else if (!IsRetryableStatus(result->status)) {
      throw Error(ErrorCode::kHttpStatus,
                  config_.endpoint + " answered HTTP " + std::to_string(result->status));
    } else {
      last_error = "HTTP " + std::to_string(result->status);
    }
    LOG(WARNING) << config_.endpoint << " attempt " << attempt << "/" << max_attempts
                 << " failed: " << last_error;
    if (attempt < max_attempts) {
      const long long delay = std::min<long long>(
          static_cast<long long>(config_.backoff_initial_ms) << std::min(attempt - 1, 20),
          config_.backoff_max_ms);
      std::this_thread::sleep_for(std::chrono::milliseconds(delay));
    }
  }
  throw Error(ErrorCode::kTransport, config_.endpoint + " failed after " +
                                         std::to_string(max_attempts) +
                                         " attempts; last error: " + last_error);
}

}  // namespace groundgraph
