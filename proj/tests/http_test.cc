// Copyright 2026 The Scribe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "scribe/http_server.h"

#include <gtest/gtest.h>

#include <thread>

#include "httplib.h"
#include "nlohmann/json.hpp"
#include "scribe/dataset.h"
#include "service_fixture.h"

namespace scribe {
namespace {

using nlohmann::json;

class HttpTest : public ::testing::Test {
 protected:
  HttpTest()
      : service_(testing::SmallBaseline(), [this] {
          ServiceConfig cfg;
          cfg.data_dir = dir_.path();
          return cfg;
        }()),
        server_(service_),
        writer_("w", 33, WriterProfile{}) {
    port_ = server_.Bind("127.0.0.1", 0);
    thread_ = std::thread([this] { server_.Listen(); });
    server_.WaitUntilReady();
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
  }
  ~HttpTest() override {
    server_.Stop();
    thread_.join();
  }

  httplib::Result PostJson(const std::string& path, const json& body) {
    return client_->Post(path, body.dump(), "application/json");
  }

  json Character(const std::string& user, int sid, CharLabel prompt,
                 int* status) {
    const auto res = PostJson(
        "/users/" + user + "/sessions/" + std::to_string(sid) + "/characters",
        {{"prompt", prompt.ToString()},
         {"samples", RawTraceToJson(writer_.Write(prompt, sid))}});
    *status = res ? res->status : -1;
    return res ? json::parse(res->body) : json();
  }

  testing::TempDir dir_;
  ScribeService service_;
  HttpServer server_;
  SyntheticWriter writer_;
  int port_ = -1;
  std::thread thread_;
  std::unique_ptr<httplib::Client> client_;
};

TEST(HttpStatusTest, Mapping) {
  EXPECT_EQ(HttpStatusFor(ErrorCode::kBadRequest), 400);
  EXPECT_EQ(HttpStatusFor(ErrorCode::kDegenerateTrace), 400);
  EXPECT_EQ(HttpStatusFor(ErrorCode::kNotFound), 404);
  EXPECT_EQ(HttpStatusFor(ErrorCode::kIncompleteSession), 409);
  EXPECT_EQ(HttpStatusFor(ErrorCode::kCorruptStore), 500);
}

TEST_F(HttpTest, FullSessionOverTheWire) {
  ASSERT_GT(port_, 0);
  const auto started = client_->Post("/users/ann/sessions");
  ASSERT_TRUE(started);
  EXPECT_EQ(started->status, 201);
  const json start = json::parse(started->body);
  EXPECT_EQ(start["session_id"], 1);
  ASSERT_EQ(start["prompts"].size(), 26u);

  std::vector<json> replies;
  for (const auto& p : start["prompts"]) {
    int status = 0;
    replies.push_back(
        Character("ann", 1, *CharLabel::Parse(p.get<std::string>()), &status));
    ASSERT_EQ(status, 200) << replies.back().dump();
    if (replies.size() == 1) {
      const auto early = client_->Get("/users/ann/sessions/1/score");
      ASSERT_TRUE(early);
      EXPECT_EQ(early->status, 409);
      EXPECT_EQ(json::parse(early->body)["error"], "IncompleteSession");
    }
  }
  for (const json& r : replies) {
    ASSERT_EQ(r["posterior"].size(), 26u);
    double sum = 0.0;
    std::string best;
    double best_p = -1.0;
    for (const auto& [label, p] : r["posterior"].items()) {
      sum += p.get<double>();
      if (p.get<double>() > best_p) best_p = p.get<double>(), best = label;
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
    EXPECT_EQ(r["prediction"], best);
    EXPECT_GT(r["duration_s"].get<double>(), 0.0);
    EXPECT_EQ(r["generation"], 0);
  }

  const auto scored = client_->Get("/users/ann/sessions/1/score");
  ASSERT_TRUE(scored);
  EXPECT_EQ(scored->status, 200);
  EXPECT_EQ(json::parse(scored->body),
            ChannelReportToJson(service_.SessionScore("ann", 1)));

  const auto protos = client_->Get("/users/ann/prototypes");
  ASSERT_TRUE(protos);
  EXPECT_EQ(protos->status, 200);
  const json doc = json::parse(protos->body);
  EXPECT_EQ(doc, PrototypeStoreToJson(service_.Prototypes("ann")));
  EXPECT_EQ(doc["generation"], 1);

  // The next session is decoded by the adapted set.
  ASSERT_EQ(client_->Post("/users/ann/sessions")->status, 201);
  int status = 0;
  const json next = Character("ann", 2, CharLabel::FromChar('a'), &status);
  EXPECT_EQ(status, 200);
  EXPECT_GE(next["generation"].get<int>(), 1);
}

TEST_F(HttpTest, ClientErrors) {
  ASSERT_EQ(client_->Post("/users/bo/sessions")->status, 201);
  auto expect = [](const httplib::Result& res, int status, const char* error) {
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, status) << res->body;
    EXPECT_EQ(json::parse(res->body)["error"], error) << res->body;
  };
  const std::string chars = "/users/bo/sessions/1/characters";
  expect(client_->Post(chars, "{not json", "application/json"), 400, "BadRequest");
  expect(PostJson(chars, {{"samples", json::array()}}), 400, "BadRequest");
  expect(PostJson(chars, {{"prompt", "A"}, {"samples", json::array()}}), 400,
         "BadRequest");
  expect(PostJson(chars, {{"prompt", "a"}, {"samples", {{1, 2, 0}}}}), 400,
         "BadRequest");
  expect(PostJson(chars, {{"prompt", "a"}, {"samples", {{1, 2}}}}), 400,
         "BadRequest");
  expect(PostJson("/users/bo/sessions/9/characters",
                  {{"prompt", "a"}, {"samples", {{1, 2, 0}, {3, 4, 16}}}}),
         404, "NotFound");
  expect(PostJson("/users/bo/sessions/x/characters",
                  {{"prompt", "a"}, {"samples", {{1, 2, 0}, {3, 4, 16}}}}),
         404, "NotFound");
  expect(client_->Get("/users/bo/sessions/2/score"), 404, "NotFound");
  expect(client_->Get("/users/nobody/prototypes"), 404, "NotFound");
  expect(client_->Get("/users/nobody/sessions/1/score"), 404, "NotFound");
  expect(client_->Post("/users/bad%20id/sessions"), 400, "BadRequest");

  int status = 0;
  Character("bo", 1, CharLabel::FromChar('q'), &status);
  EXPECT_EQ(status, 200);
  const json dup = Character("bo", 1, CharLabel::FromChar('q'), &status);
  EXPECT_EQ(status, 400);
  EXPECT_EQ(dup["error"], "BadRequest");
}

}  // namespace
}  // namespace scribe
