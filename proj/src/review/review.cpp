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

#include "hatelab/review/review.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hatelab/util/error.hpp"
#include "hatelab/util/random.hpp"

namespace hatelab::review {

namespace {

constexpr ErrorCategory kCategories[] = {ErrorCategory::LexiconFalsePositive,
                                         ErrorCategory::NonArchetypalFalseNegative, ErrorCategory::OtherError,
                                         ErrorCategory::Correct};

ReviewItem infer_one(const models::ModelArtifact& model, const corpus::CleanPost& post, std::size_t hits) {
  const models::Prediction p = models::predict(model, post.tokens);
  ReviewItem item;
  item.post_id = post.post_id;
  item.model_label = p.hate;
  item.model_score = p.score;
  item.lexicon_hit_count = hits;
  return item;
}

}  // namespace

std::string_view to_string(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::LexiconFalsePositive: return "lexicon_false_positive";
    case ErrorCategory::NonArchetypalFalseNegative: return "non_archetypal_false_negative";
    case ErrorCategory::OtherError: return "other_error";
    case ErrorCategory::Correct: return "correct";
  }
  return "other_error";
}

std::optional<ErrorCategory> parse_error_category(std::string_view text) {
  for (auto c : kCategories) {
    if (to_string(c) == text) return c;
  }
  return std::nullopt;
}

Json to_json(const ReviewItem& item) {
  Json j;
  j["post_id"] = item.post_id;
  j["model_label"] = item.model_label ? "Yes" : "No";
  j["model_score"] = item.model_score;
  j["expert_label"] = item.expert_label ? Json(*item.expert_label ? "Yes" : "No") : Json(nullptr);
  j["lexicon_hit_count"] = item.lexicon_hit_count;
  j["error_category"] = item.error_category ? Json(to_string(*item.error_category)) : Json(nullptr);
  return j;
}

ReviewItem review_item_from_json(const Json& j) {
  auto yes_no = [](const Json& v, const char* field) {
    const auto s = v.get<std::string>();
    if (s != "Yes" && s != "No") throw Error(ErrorCode::ParseError, std::string(field) + " must be Yes or No");
    return s == "Yes";
  };
  try {
    ReviewItem item;
    item.post_id = j.at("post_id").get<std::string>();
    item.model_label = yes_no(j.at("model_label"), "model_label");
    item.model_score = j.at("model_score").get<double>();
    if (j.contains("expert_label") && !j.at("expert_label").is_null()) {
      item.expert_label = yes_no(j.at("expert_label"), "expert_label");
    }
    item.lexicon_hit_count = j.at("lexicon_hit_count").get<std::size_t>();
    if (j.contains("error_category") && !j.at("error_category").is_null()) {
      item.error_category = parse_error_category(j.at("error_category").get<std::string>());
      if (!item.error_category) throw Error(ErrorCode::ParseError, "unknown error_category");
    }
    return item;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("review item: ") + e.what());
  }
}

std::vector<ReviewItem> infer_batch(const models::ModelArtifact& model, const std::vector<corpus::CleanPost>& posts) {
  std::vector<ReviewItem> out;
  out.reserve(posts.size());
  for (const auto& post : posts) out.push_back(infer_one(model, post, post.lexicon_hits.size()));
  return out;
}

std::vector<ReviewItem> infer_batch(const models::ModelArtifact& model, const std::vector<corpus::CleanPost>& posts,
                                    const lexicon::Matcher& matcher) {
  std::vector<ReviewItem> out;
  out.reserve(posts.size());
  for (const auto& post : posts) out.push_back(infer_one(model, post, matcher.count(post.text)));
  return out;
}

std::string_view to_string(SampleStrategy s) {
  switch (s) {
    case SampleStrategy::Uncertainty: return "uncertainty";
    case SampleStrategy::Random: return "random";
    case SampleStrategy::TopPositive: return "top_positive";
  }
  return "uncertainty";
}

SampleStrategy parse_sample_strategy(std::string_view text) {
  if (text == "uncertainty") return SampleStrategy::Uncertainty;
  if (text == "random") return SampleStrategy::Random;
  if (text == "top_positive") return SampleStrategy::TopPositive;
  throw Error(ErrorCode::InvalidArgument, "unknown sampling strategy '" + std::string(text) + "'");
}

std::vector<ReviewItem> sample_for_review(const std::vector<ReviewItem>& items, SampleStrategy strategy, std::size_t n,
                                          std::uint64_t seed) {
  if (n > items.size()) {
    throw Error(ErrorCode::SampleTooLarge,
                "requested " + std::to_string(n) + " items from " + std::to_string(items.size()));
  }
  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  switch (strategy) {
    case SampleStrategy::Uncertainty:
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double da = std::fabs(items[a].model_score - 0.5);
        const double db = std::fabs(items[b].model_score - 0.5);
        if (da != db) return da < db;
        return items[a].post_id < items[b].post_id;
      });
      break;
    case SampleStrategy::TopPositive:
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (items[a].model_score != items[b].model_score) return items[a].model_score > items[b].model_score;
        return items[a].post_id < items[b].post_id;
      });
      break;
    case SampleStrategy::Random: {
      Rng rng(derive_seed(seed, 0x5a3d));
      for (std::size_t i = 0; i < n; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.below(order.size() - i));
        std::swap(order[i], order[j]);
      }
      break;
    }
  }
  std::vector<ReviewItem> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(items[order[i]]);
  return out;
}

ErrorCategory categorize(bool model_label, bool expert_label, std::size_t lexicon_hit_count) {
  if (model_label == expert_label) return ErrorCategory::Correct;
  if (model_label && lexicon_hit_count > 0) return ErrorCategory::LexiconFalsePositive;
  if (!model_label && lexicon_hit_count == 0) return ErrorCategory::NonArchetypalFalseNegative;
  return ErrorCategory::OtherError;
}

void attach_expert_labels(std::vector<ReviewItem>& items, const std::unordered_map<std::string, bool>& expert) {
  for (auto& item : items) {
    auto it = expert.find(item.post_id);
    if (it != expert.end()) item.expert_label = it->second;
  }
}

Json ErrorAnalysis::to_json() const {
  Json j;
  j["total"] = items.size();
  Json c;
  for (auto cat : kCategories) c[std::string(to_string(cat))] = count(cat);
  j["counts"] = std::move(c);
  Json by;
  for (auto cat : kCategories) {
    Json list = Json::array();
    for (const auto& item : items) {
      if (item.error_category == cat) list.push_back(review::to_json(item));
    }
    by[std::string(to_string(cat))] = std::move(list);
  }
  j["items"] = std::move(by);
  return j;
}

ErrorAnalysis disagreement_report(const std::vector<ReviewItem>& items) {
  std::vector<std::string> missing;
  for (const auto& item : items) {
    if (!item.expert_label) missing.push_back(item.post_id);
  }
  if (!missing.empty()) {
    std::string list;
    for (std::size_t i = 0; i < missing.size() && i < 10; ++i) list += (i ? ", " : "") + missing[i];
    if (missing.size() > 10) list += ", ...";
    throw Error(ErrorCode::MissingExpertLabels,
                std::to_string(missing.size()) + " item(s) lack an expert label: " + list);
  }
  ErrorAnalysis report;
  report.items = items;
  for (auto& item : report.items) {
    item.error_category = categorize(item.model_label, *item.expert_label, item.lexicon_hit_count);
    ++report.counts[static_cast<std::size_t>(*item.error_category)];
  }
  return report;
}

}  // namespace hatelab::review
