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

#include "hatelab/server/service.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "hatelab/annotation/agreement.hpp"
#include "hatelab/util/error.hpp"
#include "hatelab/util/io.hpp"

namespace hatelab::server {

using annotation::Decision;
using annotation::LabelRecord;

namespace {

Response error(int status, std::string_view code, const std::string& message) {
  return {status, Json{{"error", code}, {"message", message}}};
}

Response unauthorized() { return error(401, "unauthorized", "missing, invalid or expired session token"); }

std::string new_token() {
  std::random_device rd;
  static constexpr char kHex[] = "0123456789abcdef";
  std::string token;
  for (int i = 0; i < 8; ++i) {
    std::uint32_t x = rd();
    for (int k = 0; k < 8; ++k, x >>= 4) token.push_back(kHex[x & 0xf]);
  }
  return token;
}

bool same_secret(std::string_view given, std::string_view expected) {
  if (expected.empty() || given.size() != expected.size()) return false;
  unsigned char diff = 0;
  for (std::size_t i = 0; i < given.size(); ++i) diff |= static_cast<unsigned char>(given[i] ^ expected[i]);
  return diff == 0;
}

std::string iso_time(std::chrono::system_clock::time_point t) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::optional<Json> parse_body(const Request& r) {
  try {
    Json j = Json::parse(r.body);
    if (!j.is_object()) return std::nullopt;
    return j;
  } catch (const Json::parse_error&) {
    return std::nullopt;
  }
}

std::optional<std::vector<std::string>> string_list(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::vector<std::string>{};
  const Json& v = j.at(key);
  if (!v.is_array()) return std::nullopt;
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) return std::nullopt;
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace

std::string_view to_string(Role role) { return role == Role::Facilitator ? "facilitator" : "annotator"; }

std::vector<Account> parse_accounts(const Json& j) {
  std::vector<Account> out;
  std::set<std::string> seen;
  try {
    for (const auto& a : j.at("accounts")) {
      Account acc;
      acc.annotator_id = a.at("annotator_id").get<std::string>();
      acc.passcode = a.at("passcode").get<std::string>();
      const std::string role = a.value("role", std::string("annotator"));
      if (role != "annotator" && role != "facilitator") {
        throw Error(ErrorCode::ParseError, "unknown role '" + role + "' for " + acc.annotator_id);
      }
      acc.role = role == "facilitator" ? Role::Facilitator : Role::Annotator;
      if (acc.annotator_id.empty() || acc.passcode.empty()) {
        throw Error(ErrorCode::ParseError, "accounts need a non-empty annotator_id and passcode");
      }
      if (!seen.insert(acc.annotator_id).second) {
        throw Error(ErrorCode::InvalidArgument, "duplicate account " + acc.annotator_id);
      }
      out.push_back(std::move(acc));
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("accounts: ") + e.what());
  }
  return out;
}

std::vector<Account> load_accounts(const std::filesystem::path& path) {
  try {
    return parse_accounts(Json::parse(read_file(path)));
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

AnnotationService::AnnotationService(annotation::AssignmentPlan plan, std::shared_ptr<annotation::LabelStore> store,
                                     std::vector<Account> accounts, std::unordered_map<std::string, PostInfo> posts,
                                     annotation::CharacteristicSet characteristics, ServiceOptions options)
    : plan_(std::move(plan)),
      store_(std::move(store)),
      posts_(std::move(posts)),
      characteristics_(std::move(characteristics)),
      options_(std::move(options)) {
  if (!store_) throw Error(ErrorCode::InvalidArgument, "service needs a label store");
  for (auto& a : accounts) accounts_.emplace(a.annotator_id, std::move(a));
  for (std::size_t p = 0; p < plan_.rounds.size(); ++p) {
    for (std::size_t r = 0; r < plan_.rounds[p].size(); ++r) {
      for (const auto& id : plan_.rounds[p][r]) {
        placement_[id] = {static_cast<int>(r + 1), {plan_.pairs[p].first, plan_.pairs[p].second}};
      }
    }
  }
  for (const auto& [annotator, ids] : plan_.solo) {
    for (const auto& id : ids) placement_[id] = {0, {annotator}};
  }
}

std::optional<AnnotationService::Session> AnnotationService::authenticate(const Request& r) {
  constexpr std::string_view kBearer = "Bearer ";
  if (r.authorization.size() <= kBearer.size() || r.authorization.compare(0, kBearer.size(), kBearer) != 0) {
    return std::nullopt;
  }
  const std::string token = r.authorization.substr(kBearer.size());
  std::lock_guard lock(sessions_mutex_);
  auto it = sessions_.find(token);
  if (it == sessions_.end()) return std::nullopt;
  if (options_.clock() >= it->second.expires) {
    sessions_.erase(it);
    return std::nullopt;
  }
  return it->second;
}

std::optional<int> AnnotationService::parse_round(const Request& r, bool allow_solo) const {
  auto it = r.query.find("round");
  if (it == r.query.end()) return std::nullopt;
  try {
    std::size_t used = 0;
    const int round = std::stoi(it->second, &used);
    if (used != it->second.size()) return std::nullopt;
    if (round < (allow_solo ? 0 : 1) || round > static_cast<int>(plan_.config.paired_rounds)) return std::nullopt;
    return round;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

Response AnnotationService::handle(const Request& r) {
  struct Route {
    std::string_view method;
    std::string_view path;
  };
  static constexpr Route kRoutes[] = {{"POST", "/api/login"},
                                      {"GET", "/api/me/batch"},
                                      {"POST", "/api/labels"},
                                      {"GET", "/api/pairs/me/agreement"},
                                      {"POST", "/api/adjudications"},
                                      {"GET", "/api/stats/characteristics"}};
  bool known_path = false;
  for (const auto& route : kRoutes) {
    if (route.path != r.path) continue;
    known_path = true;
    if (route.method != r.method) continue;
    try {
      if (r.path == "/api/login") return login(r);
      const auto session = authenticate(r);
      if (!session) return unauthorized();
      if (r.path == "/api/me/batch") return batch(*session, r);
      if (r.path == "/api/labels") return post_label(*session, r);
      if (r.path == "/api/pairs/me/agreement") return agreement(*session, r);
      if (r.path == "/api/adjudications") return adjudicate(*session, r);
      return characteristic_stats();
    } catch (const Error& e) {
      return error(500, to_string(e.code()), e.what());
    }
  }
  if (known_path) return error(405, "method_not_allowed", r.method + " is not supported on " + r.path);
  return error(404, "not_found", "no endpoint " + r.path);
}

Response AnnotationService::login(const Request& r) {
  const auto body = parse_body(r);
  if (!body) return error(400, "bad_request", "body must be a JSON object");
  const std::string id = body->value("annotator_id", std::string());
  const std::string passcode = body->value("passcode", std::string());
  auto it = accounts_.find(id);
  if (it == accounts_.end() || !same_secret(passcode, it->second.passcode)) {
    return error(401, "unauthorized", "unknown annotator or wrong passcode");
  }
  Session s{id, it->second.role, options_.clock() + options_.token_ttl};
  const std::string token = new_token();
  {
    std::lock_guard lock(sessions_mutex_);
    sessions_[token] = s;
  }
  return {200, Json{{"token", token},
                    {"annotator_id", id},
                    {"role", to_string(s.role)},
                    {"expires_at", iso_time(s.expires)}}};
}

Response AnnotationService::batch(const Session& s, const Request& r) {
  const auto round = parse_round(r, true);
  if (!round) return error(422, "invalid_round", "round must be 0 (solo) to " + std::to_string(plan_.config.paired_rounds));
  const auto ids = plan_.batch_for(s.annotator_id, *round);
  if (ids.empty()) return error(404, "no_batch", s.annotator_id + " has no batch for round " + std::to_string(*round));
  Json posts = Json::array();
  std::size_t labelled = 0;
  store_->read([&](const std::vector<LabelRecord>& records) {
    std::set<std::string> done;
    for (const auto& rec : records) {
      if (rec.annotator_id == s.annotator_id) done.insert(rec.post_id);
    }
    for (const auto& id : ids) {
      if (done.count(id)) {
        ++labelled;
        continue;
      }
      Json p{{"post_id", id}};
      auto info = posts_.find(id);
      p["text"] = info == posts_.end() ? Json(nullptr) : Json(info->second.text);
      p["url"] = info == posts_.end() ? Json(nullptr) : Json(info->second.url);
      posts.push_back(std::move(p));
    }
  });
  return {200, Json{{"round", *round}, {"total", ids.size()}, {"labelled", labelled}, {"posts", std::move(posts)}}};
}

Response AnnotationService::post_label(const Session& s, const Request& r) {
  const auto body = parse_body(r);
  if (!body) return error(400, "bad_request", "body must be a JSON object");
  const std::string post_id = body->value("post_id", std::string());
  auto place = placement_.find(post_id);
  if (place == placement_.end()) return error(404, "unknown_post", "post '" + post_id + "' is not in the plan");
  const auto& who = place->second.annotators;
  if (std::find(who.begin(), who.end(), s.annotator_id) == who.end()) {
    return error(403, "forbidden", "post '" + post_id + "' is not assigned to " + s.annotator_id);
  }
  const auto decision_field = body->contains("decision") && body->at("decision").is_string()
                                  ? annotation::parse_decision(body->at("decision").get<std::string>())
                                  : std::nullopt;
  if (!decision_field) return error(422, "invalid_decision", "decision must be Yes or No");
  const auto chars = string_list(*body, "characteristics");
  if (!chars) return error(422, "invalid_characteristics", "characteristics must be a list of strings");

  LabelRecord rec{post_id, s.annotator_id, place->second.round, *decision_field, *chars, annotation::utc_now()};
  const std::string problem = annotation::label_problem(rec, characteristics_);
  if (!problem.empty()) return error(422, "invalid_label", problem);
  const auto audit = store_->upsert(rec);
  return {201, Json{{"label", annotation::to_json(rec)}, {"action", audit.action}}};
}

Response AnnotationService::agreement(const Session& s, const Request& r) {
  const auto round = parse_round(r, false);
  if (!round) return error(422, "invalid_round", "round must be 1 to " + std::to_string(plan_.config.paired_rounds));
  const auto pair = plan_.pair_of(s.annotator_id);
  if (!pair) return error(404, "no_pair", s.annotator_id + " is not in a pair");
  const auto partner = *plan_.partner_of(s.annotator_id);
  const auto& ids = plan_.rounds[*pair][static_cast<std::size_t>(*round - 1)];

  std::optional<annotation::PairRoundResult> result;
  std::unordered_map<std::string, Decision> mine, theirs;
  std::size_t own_labelled = 0;
  bool partner_done = false;
  store_->read([&](const std::vector<LabelRecord>& records) {
    result = annotation::pair_round_agreement(plan_, *pair, *round, records);
    std::set<std::string> batch(ids.begin(), ids.end());
    std::size_t partner_labelled = 0;
    for (const auto& rec : records) {
      if (!batch.count(rec.post_id)) continue;
      if (rec.annotator_id == s.annotator_id) {
        mine[rec.post_id] = rec.decision;
        ++own_labelled;
      } else if (rec.annotator_id == partner) {
        theirs[rec.post_id] = rec.decision;
        ++partner_labelled;
      }
    }
    partner_done = partner_labelled == ids.size();
  });
  if (!result) {
    Json body{{"error", "round_incomplete"},
              {"message", "agreement is available once both pair members finish the round"},
              {"round", *round},
              {"labelled", own_labelled},
              {"total", ids.size()},
              {"partner_complete", partner_done}};
    return {409, std::move(body)};
  }
  Json dis = Json::array();
  for (const auto& id : result->disagreements) {
    dis.push_back({{"post_id", id}, {"mine", to_string(mine.at(id))}, {"partner", to_string(theirs.at(id))}});
  }
  return {200, Json{{"round", *round},
                    {"annotator_id", s.annotator_id},
                    {"partner", partner},
                    {"items", ids.size()},
                    {"agreement", result->agreement},
                    {"kappa", result->kappa},
                    {"disagreements", std::move(dis)}}};
}

Response AnnotationService::adjudicate(const Session& s, const Request& r) {
  if (s.role != Role::Facilitator) return error(403, "forbidden", "adjudication needs the facilitator role");
  const auto body = parse_body(r);
  if (!body) return error(400, "bad_request", "body must be a JSON object");
  const std::string post_id = body->value("post_id", std::string());
  auto place = placement_.find(post_id);
  if (place == placement_.end() || place->second.round == 0) {
    return error(404, "unknown_post", "post '" + post_id + "' is not a paired post");
  }
  const auto decision = body->contains("decision") && body->at("decision").is_string()
                            ? annotation::parse_decision(body->at("decision").get<std::string>())
                            : std::nullopt;
  if (!decision) return error(422, "invalid_decision", "decision must be Yes or No");
  const auto chars = string_list(*body, "characteristics");
  if (!chars) return error(422, "invalid_characteristics", "characteristics must be a list of strings");

  std::vector<LabelRecord> pair_labels;
  for (const auto& annotator : place->second.annotators) {
    if (auto rec = store_->find(post_id, annotator)) pair_labels.push_back(*rec);
  }
  if (pair_labels.size() != 2) {
    return error(409, "round_incomplete", "both pair members must label '" + post_id + "' before adjudication");
  }
  const auto final_label = annotation::adjudicate(post_id, pair_labels, *decision, *chars);
  LabelRecord rec{post_id, std::string(annotation::kAdjudicatedId), place->second.round, *decision,
                  final_label.characteristics, annotation::utc_now()};
  const std::string problem = annotation::label_problem(rec, characteristics_);
  if (!problem.empty()) return error(422, "invalid_label", problem);
  store_->upsert(rec);
  return {201, Json{{"final", final_label.to_json()}, {"adjudicated_by", s.annotator_id}}};
}

Response AnnotationService::characteristic_stats() {
  const auto records = store_->snapshot();
  const auto resolved = annotation::resolve_labels(records);
  std::map<std::string, std::size_t> final_counts, label_counts;
  for (const auto& name : characteristics_.names()) {
    final_counts[name] = 0;
    label_counts[name] = 0;
  }
  for (const auto& [name, n] : annotation::characteristics_distribution(resolved.labels)) final_counts[name] = n;
  for (const auto& rec : records) {
    if (rec.annotator_id == annotation::kAdjudicatedId || rec.decision != Decision::Yes) continue;
    for (const auto& c : rec.characteristics) ++label_counts[c];
  }
  Json hist = Json::array();
  for (const auto& name : characteristics_.names()) {
    hist.push_back({{"characteristic", name}, {"final", final_counts[name]}, {"labels", label_counts[name]}});
  }
  return {200, Json{{"resolved_posts", resolved.labels.size()},
                    {"unresolved_posts", resolved.unresolved.size()},
                    {"histogram", std::move(hist)}}};
}

}  // namespace hatelab::server
