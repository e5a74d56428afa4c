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

#include "hatelab/annotation/assign.hpp"

#include <unordered_set>

#include "hatelab/util/error.hpp"
#include "hatelab/util/io.hpp"
#include "hatelab/util/random.hpp"

namespace hatelab::annotation {

std::size_t AssignmentPlan::paired_post_count() const {
  std::size_t n = 0;
  for (const auto& pair_rounds : rounds) {
    for (const auto& batch : pair_rounds) n += batch.size();
  }
  return n;
}

std::optional<std::size_t> AssignmentPlan::pair_of(const std::string& annotator) const {
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    if (pairs[p].first == annotator || pairs[p].second == annotator) return p;
  }
  return std::nullopt;
}

std::optional<std::string> AssignmentPlan::partner_of(const std::string& annotator) const {
  const auto p = pair_of(annotator);
  if (!p) return std::nullopt;
  return pairs[*p].first == annotator ? pairs[*p].second : pairs[*p].first;
}

std::vector<std::string> AssignmentPlan::batch_for(const std::string& annotator, int round) const {
  if (round == 0) {
    for (const auto& [who, posts] : solo) {
      if (who == annotator) return posts;
    }
    return {};
  }
  const auto p = pair_of(annotator);
  if (!p || round < 0 || static_cast<std::size_t>(round) > rounds[*p].size()) return {};
  return rounds[*p][static_cast<std::size_t>(round) - 1];
}

Json AssignmentPlan::to_json() const {
  Json j;
  j["config"] = {{"batch_size", config.batch_size}, {"paired_rounds", config.paired_rounds}, {"seed", config.seed}};
  j["pairs"] = Json::array();
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    Json pj;
    pj["annotators"] = {pairs[p].first, pairs[p].second};
    pj["rounds"] = rounds[p];
    j["pairs"].push_back(std::move(pj));
  }
  j["solo"] = Json::array();
  for (const auto& [who, posts] : solo) j["solo"].push_back({{"annotator", who}, {"posts", posts}});
  return j;
}

AssignmentPlan AssignmentPlan::from_json(const Json& j) {
  AssignmentPlan plan;
  try {
    const auto& cfg = j.at("config");
    plan.config.batch_size = cfg.at("batch_size").get<std::size_t>();
    plan.config.paired_rounds = cfg.at("paired_rounds").get<std::size_t>();
    plan.config.seed = cfg.at("seed").get<std::uint64_t>();
    for (const auto& pj : j.at("pairs")) {
      const auto& who = pj.at("annotators");
      plan.pairs.emplace_back(who.at(0).get<std::string>(), who.at(1).get<std::string>());
      plan.rounds.push_back(pj.at("rounds").get<std::vector<std::vector<std::string>>>());
    }
    for (const auto& sj : j.at("solo")) {
      plan.solo.emplace_back(sj.at("annotator").get<std::string>(), sj.at("posts").get<std::vector<std::string>>());
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("assignment plan: ") + e.what());
  }
  return plan;
}

AssignmentPlan AssignmentPlan::load(const std::filesystem::path& path) {
  try {
    return from_json(Json::parse(read_file(path)));
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

AssignmentPlan make_assignments(const std::vector<std::string>& annotators, const std::vector<std::string>& posts,
                                const AssignmentConfig& config) {
  if (annotators.size() < 2 || annotators.size() % 2 != 0) {
    throw Error(ErrorCode::OddAnnotatorCount,
                "need an even number of annotators >= 2, got " + std::to_string(annotators.size()));
  }
  if (config.batch_size == 0 || config.paired_rounds == 0) {
    throw Error(ErrorCode::InvalidArgument, "batch_size and paired_rounds must be positive");
  }
  if (std::unordered_set<std::string>(annotators.begin(), annotators.end()).size() != annotators.size()) {
    throw Error(ErrorCode::InvalidArgument, "duplicate annotator ids");
  }
  if (std::unordered_set<std::string>(posts.begin(), posts.end()).size() != posts.size()) {
    throw Error(ErrorCode::InvalidArgument, "duplicate post ids");
  }
  const std::size_t n_pairs = annotators.size() / 2;
  const std::size_t needed = n_pairs * config.paired_rounds * config.batch_size;
  if (posts.size() < needed) {
    throw Error(ErrorCode::InsufficientPosts, "paired phase needs " + std::to_string(needed) + " posts, have " +
                                                  std::to_string(posts.size()) + " (short by " +
                                                  std::to_string(needed - posts.size()) + ")");
  }

  AssignmentPlan plan;
  plan.config = config;
  std::vector<std::string> order = annotators;
  Rng rng(derive_seed(config.seed, 0x70a1));
  rng.shuffle(std::span<std::string>(order));
  for (std::size_t p = 0; p < n_pairs; ++p) plan.pairs.emplace_back(order[2 * p], order[2 * p + 1]);

  plan.rounds.assign(n_pairs, std::vector<std::vector<std::string>>(config.paired_rounds));
  std::size_t next = 0;
  for (std::size_t r = 0; r < config.paired_rounds; ++r) {
    for (std::size_t p = 0; p < n_pairs; ++p) {
      auto& batch = plan.rounds[p][r];
      batch.assign(posts.begin() + static_cast<std::ptrdiff_t>(next),
                   posts.begin() + static_cast<std::ptrdiff_t>(next + config.batch_size));
      next += config.batch_size;
    }
  }

  for (const auto& who : order) plan.solo.emplace_back(who, std::vector<std::string>{});
  for (std::size_t i = 0; next < posts.size(); ++next, ++i) plan.solo[i % order.size()].second.push_back(posts[next]);
  return plan;
}

}  // namespace hatelab::annotation
