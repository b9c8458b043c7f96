// Copyright 2026 The rxnie Authors.
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

#include <gtest/gtest.h>

#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "fixtures.hpp"
#include "httplib.h"
#include "json.hpp"
#include "rxnie/bootstrap.hpp"
#include "rxnie/error.hpp"

namespace rxnie {
namespace {

using json = nlohmann::json;

class ReviewFixture : public ::testing::Test {
 protected:
  void SetUp() override {
    ws_ = std::make_unique<Workspace>(testing::seeded_synthetic_workspace(dir_.path(), 200, 3));
    run_iteration(*ws_, BootstrapConfig{});
    queue_ = ws_->queue(1);
    ASSERT_GE(queue_.size(), 5u);
    service_ = std::make_unique<ReviewService>(*ws_);
  }

  ErrorCode decide_error(const std::string &id, Verdict v) {
    try {
      service_->record_decision(id, v);
    } catch (const Error &e) {
      return e.code();
    }
    return ErrorCode::kUsage;
  }

  testing::TempDir dir_{"review"};
  std::unique_ptr<Workspace> ws_;
  std::vector<ReviewCandidate> queue_;
  std::unique_ptr<ReviewService> service_;
};

TEST_F(ReviewFixture, DecideThenFinalize) {
  const std::size_t before = ws_->patterns().patterns.size();
  for (std::size_t i = 0; i < queue_.size(); ++i) {
    json r = service_->record_decision(queue_[i].id, i == 0 ? Verdict::kAccept : Verdict::kReject);
    EXPECT_EQ(r["status"], i == 0 ? "accepted" : "rejected");
    EXPECT_EQ(r["iteration"], 1);
  }
  json fin = service_->finalize(1);
  EXPECT_EQ(fin["version"], 1);
  EXPECT_EQ(fin["accepted"], 1);
  EXPECT_EQ(fin["patterns"], before + 1);
  EXPECT_EQ(ws_->patterns().patterns.size(), before + 1);
}

TEST_F(ReviewFixture, ErrorsAndIdempotentRepeat) {
  EXPECT_EQ(decide_error("no-such-id", Verdict::kAccept), ErrorCode::kUnknownCandidate);
  service_->record_decision(queue_[0].id, Verdict::kAccept);
  EXPECT_NO_THROW(service_->record_decision(queue_[0].id, Verdict::kAccept));
  EXPECT_EQ(ws_->decisions(1).size(), 1u);
  EXPECT_EQ(decide_error(queue_[0].id, Verdict::kReject), ErrorCode::kConflictingDecision);
  for (std::size_t i = 1; i < queue_.size(); ++i) service_->record_decision(queue_[i].id, Verdict::kReject);
  service_->finalize(1);
  EXPECT_EQ(decide_error(queue_[1].id, Verdict::kAccept), ErrorCode::kAlreadyFinalized);
  EXPECT_THROW(service_->finalize(1), Error);
}

TEST_F(ReviewFixture, ListingFiltersByRole) {
  json all = service_->list_candidates(1, std::nullopt);
  ASSERT_EQ(all.size(), queue_.size());
  json products = service_->list_candidates(1, Role::kProduct);
  for (const json &c : products) EXPECT_EQ(c["role"], "product");
  std::size_t expected = 0;
  for (const ReviewCandidate &c : queue_) expected += c.candidate.role == Role::kProduct;
  EXPECT_EQ(products.size(), expected);
  json its = service_->list_iterations();
  ASSERT_EQ(its.size(), 1u);
  EXPECT_EQ(its[0]["pending"], queue_.size());
  EXPECT_EQ(its[0]["finalized"], false);
}

TEST(HttpStatus, Mapping) {
  EXPECT_EQ(http_status_for(ErrorCode::kUnknownCandidate), 404);
  EXPECT_EQ(http_status_for(ErrorCode::kConflictingDecision), 409);
  EXPECT_EQ(http_status_for(ErrorCode::kPendingDecisions), 409);
  EXPECT_EQ(http_status_for(ErrorCode::kAlreadyFinalized), 409);
  EXPECT_EQ(http_status_for(ErrorCode::kUsage), 400);
  EXPECT_EQ(http_status_for(ErrorCode::kParseError), 400);
}

// Server on an ephemeral port driven over real HTTP.
class ReviewHttp : public ReviewFixture {
 protected:
  void SetUp() override {
    ReviewFixture::SetUp();
    server_ = std::make_unique<ReviewServer>(*service_);
    port_ = server_->bind("127.0.0.1", 0);
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_->listen(); });
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
  }
  void TearDown() override {
    if (server_) server_->stop();
    if (thread_.joinable()) thread_.join();
  }

  httplib::Result post(const std::string &path, const json &body) {
    return client_->Post(path, body.dump(), "application/json");
  }

  static json body(const httplib::Result &r) { return json::parse(r->body); }

  std::unique_ptr<ReviewServer> server_;
  int port_ = -1;
  std::thread thread_;
  std::unique_ptr<httplib::Client> client_;
};

TEST_F(ReviewHttp, ConsoleStyleSession) {
  const std::size_t before = ws_->patterns().patterns.size();
  auto list = client_->Get("/api/candidates?iteration=1");
  ASSERT_TRUE(list);
  ASSERT_EQ(list->status, 200);
  json rows = body(list);
  ASSERT_EQ(rows.size(), queue_.size());
  for (const char *key : {"candidate_id", "role", "pattern", "frequency", "precision_proxy", "snippets", "status"}) {
    EXPECT_TRUE(rows[0].contains(key)) << key;
  }

  for (int i = 0; i < 5; ++i) {
    auto r = post("/api/decisions", {{"candidate_id", rows[i]["candidate_id"]}, {"verdict", i < 3 ? "accept" : "reject"}});
    ASSERT_TRUE(r);
    EXPECT_EQ(r->status, 200);
  }

  const std::size_t pending = queue_.size() - 5;
  if (pending > 0) {
    auto blocked = post("/api/finalize", {{"iteration", 1}});
    ASSERT_TRUE(blocked);
    EXPECT_EQ(blocked->status, 409);
    json err = body(blocked);
    EXPECT_EQ(err["error"], "PendingDecisions");
    EXPECT_EQ(err["detail"].get<std::string>().rfind(std::to_string(pending) + " pending", 0), 0u);
    for (std::size_t i = 5; i < rows.size(); ++i) {
      ASSERT_EQ(post("/api/decisions", {{"candidate_id", rows[i]["candidate_id"]}, {"verdict", "reject"}})->status, 200);
    }
  }

  auto fin = post("/api/finalize", {{"iteration", 1}});
  ASSERT_TRUE(fin);
  ASSERT_EQ(fin->status, 200);
  json done = body(fin);
  EXPECT_EQ(done["version"], 1);
  EXPECT_EQ(done["patterns"], before + 3);
  EXPECT_EQ(ws_->patterns().patterns.size(), before + 3);
  EXPECT_EQ(ws_->patterns().version, 1);

  auto again = post("/api/finalize", {{"iteration", 1}});
  EXPECT_EQ(again->status, 409);
  EXPECT_EQ(body(again)["error"], "AlreadyFinalized");

  auto its = client_->Get("/api/iterations");
  ASSERT_EQ(its->status, 200);
  EXPECT_EQ(body(its)[0]["finalized"], true);
  EXPECT_EQ(body(its)[0]["accepted"], 3);
}

TEST_F(ReviewHttp, ErrorResponses) {
  auto unknown = post("/api/decisions", {{"candidate_id", "nope"}, {"verdict", "accept"}});
  ASSERT_TRUE(unknown);
  EXPECT_EQ(unknown->status, 404);
  EXPECT_EQ(body(unknown)["error"], "UnknownCandidate");
  EXPECT_EQ(body(unknown)["detail"], "nope");

  const std::string id = queue_[0].id;
  EXPECT_EQ(post("/api/decisions", {{"candidate_id", id}, {"verdict", "reject"}})->status, 200);
  auto conflict = post("/api/decisions", {{"candidate_id", id}, {"verdict", "accept"}});
  EXPECT_EQ(conflict->status, 409);
  EXPECT_EQ(body(conflict)["error"], "ConflictingDecision");

  EXPECT_EQ(post("/api/decisions", {{"candidate_id", id}})->status, 400);
  EXPECT_EQ(post("/api/decisions", {{"candidate_id", id}, {"verdict", "maybe"}})->status, 400);
  EXPECT_EQ(client_->Post("/api/decisions", "not json", "application/json")->status, 400);
  EXPECT_EQ(post("/api/finalize", {{"iteration", "one"}})->status, 400);
  EXPECT_EQ(client_->Get("/api/candidates")->status, 400);
  EXPECT_EQ(client_->Get("/api/candidates?iteration=x")->status, 400);
  auto bad_role = client_->Get("/api/candidates?iteration=1&role=reagent");
  EXPECT_EQ(bad_role->status, 400);
  EXPECT_EQ(body(bad_role)["error"], "UnknownRole");
  auto missing = client_->Get("/api/candidates?iteration=7");
  EXPECT_EQ(missing->status, 409);
  EXPECT_EQ(body(missing)["error"], "InvalidState");

  auto page = client_->Get("/");
  ASSERT_TRUE(page);
  EXPECT_EQ(page->status, 200);
  EXPECT_NE(page->body.find("/api"), std::string::npos);
}

TEST_F(ReviewHttp, RoleFilterOverHttp) {
  auto r = client_->Get("/api/candidates?iteration=1&role=yield");
  ASSERT_EQ(r->status, 200);
  for (const json &c : body(r)) EXPECT_EQ(c["role"], "yield");
}

}  // namespace
}  // namespace rxnie
