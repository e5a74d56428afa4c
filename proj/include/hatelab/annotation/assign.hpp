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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hatelab/util/json.hpp"

namespace hatelab::annotation {

struct AssignmentConfig {
  std::size_t batch_size = 100;
  std::size_t paired_rounds = 4;
  std::uint64_t seed = 0;
};

struct AssignmentPlan {
  std::vector<std::pair<std::string, std::string>> pairs;
  // rounds[pair][round - 1] = post ids shown to both members.
  std::vector<std::vector<std::vector<std::string>>> rounds;
  // Remainder phase, in annotator round-robin order.
  std::vector<std::pair<std::string, std::vector<std::string>>> solo;
  AssignmentConfig config;

  std::size_t paired_post_count() const;

  // Index of the pair containing the annotator, and its partner.
  std::optional<std::size_t> pair_of(const std::string& annotator) const;
  std::optional<std::string> partner_of(const std::string& annotator) const;

  // Round `round` (1-based) batch for the annotator; round 0 is the solo list.
  // Empty when the annotator or round is unknown.
  std::vector<std::string> batch_for(const std::string& annotator, int round) const;

  Json to_json() const;
  static AssignmentPlan from_json(const Json& j);
  static AssignmentPlan load(const std::filesystem::path& path);
};

// Pairs annotators in seeded random order. The paired phase takes the first
// pairs x rounds x batch_size posts in the given order (round-major, then
// pair), the rest go round-robin to the annotators in pair order.
// Throws Error(OddAnnotatorCount), Error(InsufficientPosts) with the
// shortfall, or Error(InvalidArgument) for duplicate ids or zero sizes.
AssignmentPlan make_assignments(const std::vector<std::string>& annotators, const std::vector<std::string>& posts,
                                const AssignmentConfig& config);

}  // namespace hatelab::annotation
