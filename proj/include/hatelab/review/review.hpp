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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hatelab/corpus/post.hpp"
#include "hatelab/lexicon/matcher.hpp"
#include "hatelab/models/model.hpp"
#include "hatelab/util/json.hpp"

namespace hatelab::review {

enum class ErrorCategory { LexiconFalsePositive, NonArchetypalFalseNegative, OtherError, Correct };

std::string_view to_string(ErrorCategory c);
std::optional<ErrorCategory> parse_error_category(std::string_view text);

struct ReviewItem {
  std::string post_id;
  bool model_label = false;
  double model_score = 0.0;
  std::optional<bool> expert_label;
  std::size_t lexicon_hit_count = 0;
  std::optional<ErrorCategory> error_category;  // set together with expert_label by categorize()
};

Json to_json(const ReviewItem& item);
ReviewItem review_item_from_json(const Json& j);  // throws Error(ParseError)

// Hit counts come from the posts' stored lexicon hits.
std::vector<ReviewItem> infer_batch(const models::ModelArtifact& model, const std::vector<corpus::CleanPost>& posts);
// Hit counts recomputed with `matcher` over each post's text.
std::vector<ReviewItem> infer_batch(const models::ModelArtifact& model, const std::vector<corpus::CleanPost>& posts,
                                    const lexicon::Matcher& matcher);

enum class SampleStrategy { Uncertainty, Random, TopPositive };

std::string_view to_string(SampleStrategy s);
SampleStrategy parse_sample_strategy(std::string_view text);  // throws Error(InvalidArgument)

// Uncertainty: ascending |score - 0.5|, then post_id. TopPositive: descending
// score, then post_id. Random: seeded draw without replacement, in draw order.
// Throws Error(SampleTooLarge) when n > items.size().
std::vector<ReviewItem> sample_for_review(const std::vector<ReviewItem>& items, SampleStrategy strategy, std::size_t n,
                                          std::uint64_t seed);

ErrorCategory categorize(bool model_label, bool expert_label, std::size_t lexicon_hit_count);

// Fills expert_label from `expert` (post_id -> hate) where present.
void attach_expert_labels(std::vector<ReviewItem>& items, const std::unordered_map<std::string, bool>& expert);

struct ErrorAnalysis {
  std::array<std::size_t, 4> counts{};  // indexed by ErrorCategory
  std::vector<ReviewItem> items;        // input order, categories filled in

  std::size_t count(ErrorCategory c) const { return counts[static_cast<std::size_t>(c)]; }
  Json to_json() const;
};

// Throws Error(MissingExpertLabels) listing the items without an expert label.
ErrorAnalysis disagreement_report(const std::vector<ReviewItem>& items);

}  // namespace hatelab::review
