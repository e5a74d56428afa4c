// Copyright 2026 The hatelab Authors
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

#include <doctest.h>

#include <httplib.h>

#include <thread>

#include "hatelab/annotation/labels.hpp"
#include "hatelab/server/service.hpp"
#include "hatelab/util/error.hpp"
#include "test_support.hpp"

using namespace hatelab;
using namespace hatelab::server;
using annotation::AssignmentPlan;

namespace {

struct Fixture {
  testing::TempDir dir;
  AssignmentPlan plan;
  std::shared_ptr<annotation::LabelStore> store;
  std::chrono::system_clock::time_point now = std::chrono::system_clock::now();
  std::unique_ptr<AnnotationService> service;

  Fixture() {
    annotation::AssignmentConfig cfg;
    cfg.batch_size = 4;
    cfg.paired_rounds = 2;
    cfg.seed = 9;
    std::vector<std::string> posts;
    for (int i = 0; i < 24; ++i) posts.push_back("post" + std::to_string(i));
    plan = annotation::make_assignments({"ann1", "ann2", "ann3", "ann4"}, posts, cfg);
    store = std::make_shared<annotation::LabelStore>(dir / "labels.csv");
    std::vector<Account> accounts{{"ann1", "pw1", Role::Annotator},
                                  {"ann2", "pw2", Role::Annotator},
                                  {"ann3", "pw3", Role::Annotator},
                                  {"ann4", "pw4", Role::Annotator},
                                  {"boss", "pwf", Role::Facilitator}};
    std::unordered_map<std::string, PostInfo> info;
    for (const auto& id : posts) info[id] = {"text of " + id, "https://example.org/" + id};
    ServiceOptions opts;
    opts.token_ttl = std::chrono::hours(1);
    opts.clock = [this] { return now; };
    service = std::make_unique<AnnotationService>(plan, store, accounts, info,
                                                  annotation::CharacteristicSet::shipped(), opts);
  }

  Response call(const std::string& method, const std::string& path, const Json& body = Json(),
                const std::string& token = "", std::map<std::string, std::string> query = {}) {
    Request r;
    r.method = method;
    r.path = path;
    r.query = std::move(query);
    r.body = body.is_null() ? "" : body.dump();
    if (!token.empty()) r.authorization = "Bearer " + token;
    return service->handle(r);
  }

  std::string login(const std::string& id, const std::string& pw) {
    const auto r = call("POST", "/api/login", Json{{"annotator_id", id}, {"passcode", pw}});
    REQUIRE(r.status == 200);
    return r.body["token"].get<std::string>();
  }

  int label(const std::string& token, const std::string& post, const std::string& decision) {
    Json body{{"post_id", post}, {"decision", decision}, {"characteristics", Json::array()}};
    if (decision == "Yes") body["characteristics"] = {"ethnicity"};
    return call("POST", "/api/labels", body, token).status;
  }
};

std::string passcode(const std::string& id) { return "pw" + id.substr(3); }

}  // namespace

TEST_CASE("login and token checks") {
  Fixture f;
  CHECK(f.call("POST", "/api/login", Json{{"annotator_id", "ann1"}, {"passcode", "nope"}}).status == 401);
  CHECK(f.call("POST", "/api/login", Json{{"annotator_id", "ghost"}, {"passcode", "pw1"}}).status == 401);
  CHECK(f.call("POST", "/api/login", Json::array()).status == 400);
  const auto token = f.login("ann1", "pw1");
  CHECK(token.size() == 64);
  CHECK(f.call("GET", "/api/me/batch", Json(), "", {{"round", "1"}}).status == 401);
  CHECK(f.call("GET", "/api/me/batch", Json(), "bogus", {{"round", "1"}}).status == 401);
  CHECK(f.call("GET", "/api/me/batch", Json(), token, {{"round", "1"}}).status == 200);
  f.now += std::chrono::hours(2);
  CHECK(f.call("GET", "/api/me/batch", Json(), token, {{"round", "1"}}).status == 401);
  CHECK(f.call("DELETE", "/api/labels").status == 405);
  CHECK(f.call("GET", "/api/nothing").status == 404);
}

TEST_CASE("batches list only unlabelled posts") {
  Fixture f;
  const auto& [a, b] = f.plan.pairs[0];
  const auto token = f.login(a, passcode(a));
  auto r = f.call("GET", "/api/me/batch", Json(), token, {{"round", "1"}});
  REQUIRE(r.status == 200);
  CHECK(r.body["total"] == 4);
  REQUIRE(r.body["posts"].size() == 4);
  const std::string first = r.body["posts"][0]["post_id"];
  CHECK(r.body["posts"][0]["url"] == "https://example.org/" + first);
  CHECK(f.label(token, first, "No") == 201);
  r = f.call("GET", "/api/me/batch", Json(), token, {{"round", "1"}});
  CHECK(r.body["labelled"] == 1);
  CHECK(r.body["posts"].size() == 3);
  CHECK(f.call("GET", "/api/me/batch", Json(), token, {{"round", "7"}}).status == 422);
  CHECK(f.call("GET", "/api/me/batch", Json(), token, {{"round", "x"}}).status == 422);
  CHECK(f.call("GET", "/api/me/batch", Json(), token, {{"round", "0"}}).status == 200);
}

TEST_CASE("label validation and write-through") {
  Fixture f;
  const auto& [a, b] = f.plan.pairs[0];
  const auto token = f.login(a, passcode(a));
  const auto& post = f.plan.rounds[0][0][0];
  const auto other_pair_post = f.plan.rounds[1][0][0];

  CHECK(f.call("POST", "/api/labels", Json{{"post_id", post}, {"decision", "Yes"}, {"characteristics", Json::array()}},
               token).status == 422);
  CHECK(f.call("POST", "/api/labels", Json{{"post_id", post}, {"decision", "Maybe"}}, token).status == 422);
  CHECK(f.call("POST", "/api/labels", Json{{"post_id", post}, {"decision", "Yes"}, {"characteristics", {"zodiac"}}},
               token).status == 422);
  CHECK(f.call("POST", "/api/labels", Json{{"post_id", "unknown"}, {"decision", "No"}}, token).status == 404);
  CHECK(f.call("POST", "/api/labels", Json{{"post_id", other_pair_post}, {"decision", "No"}}, token).status == 403);
  CHECK(f.store->snapshot().empty());

  const auto ok = f.call("POST", "/api/labels",
                         Json{{"post_id", post}, {"decision", "Yes"}, {"characteristics", {"ethnicity"}}}, token);
  REQUIRE(ok.status == 201);
  CHECK(ok.body["action"] == "create");
  CHECK(ok.body["label"]["round"] == 1);
  CHECK(annotation::read_labels_csv(f.dir / "labels.csv") == f.store->snapshot());
  CHECK(f.label(token, post, "No") == 201);
  const auto on_disk = annotation::read_labels_csv(f.dir / "labels.csv");
  REQUIRE(on_disk.size() == 1);
  CHECK(on_disk[0].decision == annotation::Decision::No);
}

TEST_CASE("agreement is blinded until both finish") {
  Fixture f;
  const auto& [a, b] = f.plan.pairs[0];
  const auto ta = f.login(a, passcode(a));
  const auto tb = f.login(b, passcode(b));
  const auto& batch = f.plan.rounds[0][0];
  const std::vector<std::string> mine{"Yes", "No", "No", "Yes"}, theirs{"Yes", "No", "Yes", "Yes"};
  for (std::size_t i = 0; i < 4; ++i) CHECK(f.label(ta, batch[i], mine[i]) == 201);
  for (std::size_t i = 0; i < 3; ++i) CHECK(f.label(tb, batch[i], theirs[i]) == 201);

  const auto early = f.call("GET", "/api/pairs/me/agreement", Json(), ta, {{"round", "1"}});
  CHECK(early.status == 409);
  CHECK(early.body["partner_complete"] == false);
  CHECK(early.body.dump().find("\"Yes\"") == std::string::npos);
  CHECK_FALSE(early.body.contains("disagreements"));

  CHECK(f.label(tb, batch[3], theirs[3]) == 201);
  const auto done = f.call("GET", "/api/pairs/me/agreement", Json(), ta, {{"round", "1"}});
  REQUIRE(done.status == 200);
  CHECK(done.body["agreement"] == 0.75);
  REQUIRE(done.body["disagreements"].size() == 1);
  CHECK(done.body["disagreements"][0]["post_id"] == batch[2]);
  CHECK(done.body["disagreements"][0]["mine"] == "No");
  CHECK(done.body["disagreements"][0]["partner"] == "Yes");
  CHECK(f.call("GET", "/api/pairs/me/agreement", Json(), ta, {{"round", "0"}}).status == 422);

  // Facilitator is not in a pair.
  const auto tf = f.login("boss", "pwf");
  CHECK(f.call("GET", "/api/pairs/me/agreement", Json(), tf, {{"round", "1"}}).status == 404);
}

TEST_CASE("adjudication and characteristic stats") {
  Fixture f;
  const auto& [a, b] = f.plan.pairs[0];
  const auto ta = f.login(a, passcode(a));
  const auto tb = f.login(b, passcode(b));
  const auto tf = f.login("boss", "pwf");
  const auto& post = f.plan.rounds[0][0][0];
  const auto& agreed = f.plan.rounds[0][0][1];

  CHECK(f.call("POST", "/api/adjudications", Json{{"post_id", post}, {"decision", "No"}}, ta).status == 403);
  CHECK(f.call("POST", "/api/adjudications", Json{{"post_id", post}, {"decision", "No"}}, tf).status == 409);
  f.label(ta, post, "Yes");
  f.label(tb, post, "No");
  f.label(ta, agreed, "Yes");
  f.label(tb, agreed, "Yes");
  CHECK(f.call("POST", "/api/adjudications", Json{{"post_id", post}, {"decision", "Nah"}}, tf).status == 422);
  CHECK(f.call("POST", "/api/adjudications", Json{{"post_id", "nope"}, {"decision", "No"}}, tf).status == 404);
  const auto ruling = f.call("POST", "/api/adjudications", Json{{"post_id", post}, {"decision", "Yes"}}, tf);
  REQUIRE(ruling.status == 201);
  CHECK(ruling.body["final"]["decision"] == "Yes");
  CHECK(f.store->find(post, annotation::kAdjudicatedId));

  const auto stats = f.call("GET", "/api/stats/characteristics", Json(), ta);
  REQUIRE(stats.status == 200);
  CHECK(stats.body["resolved_posts"] == 2);
  bool seen = false;
  for (const auto& row : stats.body["histogram"]) {
    if (row["characteristic"] == "ethnicity") {
      seen = true;
      CHECK(row["final"] == 2);
      CHECK(row["labels"] == 3);
    }
  }
  CHECK(seen);
}

TEST_CASE("accounts parsing") {
  const auto accounts = parse_accounts(Json::parse(
      R"({"accounts": [{"annotator_id": "x", "passcode": "p", "role": "facilitator"}, {"annotator_id": "y", "passcode": "q"}]})"));
  REQUIRE(accounts.size() == 2);
  CHECK(accounts[0].role == Role::Facilitator);
  CHECK(accounts[1].role == Role::Annotator);
  CHECK_THROWS_AS(parse_accounts(Json::parse(R"({"accounts": [{"annotator_id": "x", "passcode": "p"},
                                                              {"annotator_id": "x", "passcode": "q"}]})")),
                  Error);
  CHECK_THROWS_AS(parse_accounts(Json::parse(R"({"users": []})")), Error);
}

TEST_CASE("real HTTP round trip on an ephemeral port") {
  Fixture f;
  HttpServer server(*f.service);
  const int port = server.bind("127.0.0.1", 0);
  REQUIRE(port > 0);
  std::thread loop([&] { server.listen(); });

  httplib::Client client("127.0.0.1", port);
  const auto& [a, b] = f.plan.pairs[0];
  auto res = client.Post("/api/login", Json{{"annotator_id", a}, {"passcode", passcode(a)}}.dump(), "application/json");
  REQUIRE(res);
  CHECK(res->status == 200);
  const std::string token = Json::parse(res->body)["token"];
  const httplib::Headers auth{{"Authorization", "Bearer " + token}};

  res = client.Get("/api/me/batch?round=1", auth);
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(res->get_header_value("Content-Type").find("application/json") != std::string::npos);
  const auto batch = Json::parse(res->body);
  CHECK(batch["posts"].size() == 4);

  const std::string post = batch["posts"][0]["post_id"];
  res = client.Post("/api/labels", auth, Json{{"post_id", post}, {"decision", "No"}}.dump(), "application/json");
  REQUIRE(res);
  CHECK(res->status == 201);
  CHECK(annotation::read_labels_csv(f.dir / "labels.csv").size() == 1);

  res = client.Get("/api/pairs/me/agreement?round=1", auth);
  REQUIRE(res);
  CHECK(res->status == 409);
  res = client.Get("/api/me/batch?round=1");
  REQUIRE(res);
  CHECK(res->status == 401);
  res = client.Post("/api/labels", auth, "not json", "application/json");
  REQUIRE(res);
  CHECK(res->status == 400);

  server.stop();
  loop.join();
}
