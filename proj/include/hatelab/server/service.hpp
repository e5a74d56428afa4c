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

#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hatelab/annotation/assign.hpp"
#include "hatelab/annotation/labels.hpp"
#include "hatelab/util/json.hpp"

namespace hatelab::server {

enum class Role { Annotator, Facilitator };

std::string_view to_string(Role role);

struct Account {
  std::string annotator_id;
  std::string passcode;
  Role role = Role::Annotator;
};

// {"accounts": [{"annotator_id": "...", "passcode": "...", "role": "annotator"}]}
// Throws Error(ParseError) or Error(InvalidArgument) for duplicate ids.
std::vector<Account> parse_accounts(const Json& j);
std::vector<Account> load_accounts(const std::filesystem::path& path);

struct PostInfo {
  std::string text;
  std::string url;
};

struct Request {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
  std::string authorization;  // raw Authorization header
};

struct Response {
  int status = 200;
  Json body;
};

struct ServiceOptions {
  std::chrono::seconds token_ttl{std::chrono::hours(12)};
  std::function<std::chrono::system_clock::time_point()> clock = [] { return std::chrono::system_clock::now(); };
};

// The annotation API without a transport. All label writes go through the
// LabelStore, which rewrites its CSV before a request returns.
class AnnotationService {
 public:
  AnnotationService(annotation::AssignmentPlan plan, std::shared_ptr<annotation::LabelStore> store,
                    std::vector<Account> accounts, std::unordered_map<std::string, PostInfo> posts = {},
                    annotation::CharacteristicSet characteristics = annotation::CharacteristicSet::shipped(),
                    ServiceOptions options = {});

  Response handle(const Request& request);

  const annotation::LabelStore& store() const { return *store_; }

 private:
  struct Session {
    std::string annotator_id;
    Role role = Role::Annotator;
    std::chrono::system_clock::time_point expires;
  };
  struct Placement {
    int round = 0;  // 0 = solo
    std::vector<std::string> annotators;
  };

  Response login(const Request& r);
  Response batch(const Session& s, const Request& r);
  Response post_label(const Session& s, const Request& r);
  Response agreement(const Session& s, const Request& r);
  Response adjudicate(const Session& s, const Request& r);
  Response characteristic_stats();

  std::optional<Session> authenticate(const Request& r);
  std::optional<int> parse_round(const Request& r, bool allow_solo) const;

  annotation::AssignmentPlan plan_;
  std::shared_ptr<annotation::LabelStore> store_;
  std::unordered_map<std::string, Account> accounts_;
  std::unordered_map<std::string, PostInfo> posts_;
  annotation::CharacteristicSet characteristics_;
  ServiceOptions options_;
  std::unordered_map<std::string, Placement> placement_;  // post_id -> where it was assigned

  std::mutex sessions_mutex_;
  std::unordered_map<std::string, Session> sessions_;
};

// HTTP/1.1 front end for an AnnotationService.
class HttpServer {
 public:
  explicit HttpServer(AnnotationService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds and returns the port (an ephemeral one when port == 0); -1 on failure.
  int bind(const std::string& host, int port);
  // Serves until stop(); returns false if the listener failed.
  bool listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace hatelab::server
