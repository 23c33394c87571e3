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

#include <atomic>
#include <cstdlib>
#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>

#include "groundgraph/error.h"

namespace groundgraph {
namespace {

class FakeServer {
 public:
  FakeServer() {
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeServer() {
    server_.stop();
    thread_.join();
  }

  httplib::Server& server() { return server_; }
  std::string url(const std::string& path = "/v1/chat/completions") const {
    return "http://127.0.0.1:" + std::to_string(port_) + path;
  }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

BackendConfig Config(std::string endpoint) {
  BackendConfig c;
  c.endpoint = std::move(endpoint);
  c.model = "test-model";
  c.timeout_s = 5;
  c.retries = 2;
  c.backoff_initial_ms = 1;
  c.backoff_max_ms = 4;
  return c;
}

ChatRequest Request(std::string prompt) {
  ChatRequest r;
  r.prompt = std::move(prompt);
  return r;
}

TEST(BuildChatBody, TextOnly) {
  const auto body = BuildChatBody("m", Request("hi"));
  EXPECT_EQ(body.dump(),
            R"({"model":"m","messages":[{"role":"user","content":"hi"}],)"
            R"("temperature":0.7,"top_p":0.8,"max_tokens":256})");
}

TEST(BuildChatBody, ImagesAsDataUrls) {
  ChatRequest r = Request("look");
  r.images.push_back({"image/png", "foo"});
  const auto body = BuildChatBody("m", r);
  const auto& content = body["messages"][0]["content"];
  ASSERT_EQ(content.size(), 2u);
  EXPECT_EQ(content[0]["text"], "look");
  EXPECT_EQ(content[1]["image_url"]["url"], "data:image/png;base64,Zm9v");
}

TEST(ParseChatResponseBody, Variants) {
  EXPECT_EQ(ParseChatResponseBody(R"({"choices":[{"message":{"content":"ok"}}]})"), "ok");
  EXPECT_EQ(ParseChatResponseBody(R"({"choices":[{"message":{"content":null}}]})"), "");
  EXPECT_EQ(ParseChatResponseBody(
                R"({"choices":[{"message":{"content":[{"type":"text","text":"a"},{"type":"text","text":"b"}]}}]})"),
            "ab");
  EXPECT_THROW(ParseChatResponseBody(R"({"choices":[]})"), Error);
  EXPECT_THROW(ParseChatResponseBody("<html>"), Error);
}

TEST(BackendConfig, Validate) {
  EXPECT_NO_THROW(Config("http://x/v1").Validate());
  EXPECT_THROW(Config("").Validate(), Error);
  EXPECT_THROW(Config("ftp://x").Validate(), Error);
  BackendConfig c = Config("http://x");
  c.model.clear();
  EXPECT_THROW(c.Validate(), Error);
  c = Config("http://x");
  c.retries = -1;
  EXPECT_THROW(c.Validate(), Error);
}

TEST(HttpChatBackend, PostsOpenAiStyleRequest) {
  FakeServer fake;
  std::string seen_body, seen_auth;
  fake.server().Post("/v1/chat/completions", [&](const httplib::Request& req,
                                                 httplib::Response& res) {
    seen_body = req.body;
    seen_auth = req.get_header_value("Authorization");
    res.set_content(R"({"choices":[{"message":{"role":"assistant","content":"TARGET: 1"}}]})",
                    "application/json");
  });
  setenv("GG_TEST_HTTP_KEY", "sekret", 1);
  BackendConfig c = Config(fake.url());
  c.api_key_env = "GG_TEST_HTTP_KEY";
  HttpChatBackend backend(c);
  const ChatResponse r = backend.Chat(Request("pick one"));
  EXPECT_EQ(r.text, "TARGET: 1");
  EXPECT_FALSE(r.from_cache);
  EXPECT_EQ(seen_auth, "Bearer sekret");
  const auto body = nlohmann::json::parse(seen_body);
  EXPECT_EQ(body["model"], "test-model");
  EXPECT_EQ(body["messages"][0]["content"], "pick one");
  EXPECT_EQ(backend.attempts(), 1);
  unsetenv("GG_TEST_HTTP_KEY");
}

TEST(HttpChatBackend, RetriesServerErrors) {
  FakeServer fake;
  std::atomic<int> hits{0};
  fake.server().Post("/v1/chat/completions", [&](const httplib::Request&, httplib::Response& res) {
    if (++hits < 3) {
      res.status = 503;
      return;
    }
    res.set_content(R"({"choices":[{"message":{"content":"third time"}}]})", "application/json");
  });
  HttpChatBackend backend(Config(fake.url()));
  EXPECT_EQ(backend.Chat(Request("x")).text, "third time");
  EXPECT_EQ(backend.attempts(), 3);
}

TEST(HttpChatBackend, ClientErrorNotRetried) {
  FakeServer fake;
  fake.server().Post("/v1/chat/completions",
                     [](const httplib::Request&, httplib::Response& res) { res.status = 401; });
  HttpChatBackend backend(Config(fake.url()));
  try {
    backend.Chat(Request("x"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kHttpStatus);
    EXPECT_NE(std::string(e.what()).find("401"), std::string::npos);
  }
  EXPECT_EQ(backend.attempts(), 1);
}

TEST(HttpChatBackend, UnreachableEndpointExhaustsRetries) {
  HttpChatBackend backend(Config("http://127.0.0.1:1/v1/chat/completions"));
  try {
    backend.Chat(Request("x"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTransport);
    EXPECT_NE(std::string(e.what()).find("3 attempts"), std::string::npos) << e.what();
  }
  EXPECT_EQ(backend.attempts(), 3);
}

TEST(HttpChatBackend, ImageOnTextOnlyBackendRejectedBeforeSending) {
  HttpChatBackend backend(Config("http://127.0.0.1:1/v1/chat/completions"));
  ChatRequest r = Request("x");
  r.images.push_back({"image/png", "p"});
  try {
    backend.Chat(r);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfig);
  }
  EXPECT_EQ(backend.attempts(), 0);
}

}  // namespace
}  // namespace groundgraph
