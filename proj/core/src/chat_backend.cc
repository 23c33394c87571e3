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

#include "groundgraph/chat_backend.h"

#include <cmath>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "groundgraph/error.h"

namespace groundgraph {

void SamplingParams::Validate() const {
  if (!(temperature >= 0) || !std::isfinite(temperature)) {
    throw Error(ErrorCode::kConfig, "temperature must be a non-negative number");
  }
  if (!(top_p > 0 && top_p <= 1)) {
    throw Error(ErrorCode::kConfig, "top_p must lie in (0, 1]");
  }
  if (max_tokens <= 0) {
    throw Error(ErrorCode::kConfig, "max_tokens must be positive");
  }
}

std::string EncodedImage::Digest() const { return Sha256Hex(bytes); }

void CheckRequest(const ChatBackend& backend, const ChatRequest& request) {
  if (!request.images.empty() && !backend.vision_capable()) {
    throw Error(ErrorCode::kConfig, "backend '" + backend.model_id() +
                                        "' is text-only but the request carries images");
  }
  request.params.Validate();
}

std::string Sha256Hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::kInvalidArgument, "SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

std::string Base64Encode(std::string_view bytes) {
  std::string out(4 * ((bytes.size() + 2) / 3), '\0');
  const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()),
                                reinterpret_cast<const unsigned char*>(bytes.data()),
                                static_cast<int>(bytes.size()));
  out.resize(static_cast<std::size_t>(n));
  return out;
}

std::string CacheKey(std::string_view model_id, const ChatRequest& request) {
  nlohmann::ordered_json canonical;
  canonical["model"] = model_id;
  canonical["prompt"] = request.prompt;
  auto images = nlohmann::ordered_json::array();
  for (const auto& img : request.images) {
    images.push_back({{"mime", img.mime_type}, {"sha256", img.Digest()}});
  }
  canonical["images"] = std::move(images);
  canonical["temperature"] = request.params.temperature;
  canonical["top_p"] = request.params.top_p;
  canonical["max_tokens"] = request.params.max_tokens;
  return Sha256Hex(
      canonical.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace));
}

ChatResponse CountingBackend::Chat(const ChatRequest& request) {
  ChatResponse response = inner_.Chat(request);
  ++calls_;
  if (response.from_cache) ++cache_hits_;
  return response;
}

}  // namespace groundgraph
