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

#include <algorithm>
#include <set>

#include "hatelab/lexicon/matcher.hpp"
#include "hatelab/models/synthetic.hpp"
#include "hatelab/review/review.hpp"
#include "hatelab/util/error.hpp"
#include "test_support.hpp"

using namespace hatelab;
using namespace hatelab::review;

namespace {

ReviewItem item(std::string id, double score, std::size_t hits = 0) {
  ReviewItem r;
  r.post_id = std::move(id);
  r.model_score = score;
  r.model_label = score > 0.5;
  r.lexicon_hit_count = hits;
  return r;
}

std::vector<std::string> ids_of(const std::vector<ReviewItem>& items) {
  std::vector<std::string> out;
  for (const auto& i : items) out.push_back(i.post_id);
  return out;
}

}  // namespace

TEST_CASE("sampling strategies") {
  const std::vector<ReviewItem> items{item("a", 0.9), item("b", 0.55), item("c", 0.1)};
  CHECK(ids_of(sample_for_review(items, SampleStrategy::Uncertainty, 1, 0)) == std::vector<std::string>{"b"});
  CHECK(ids_of(sample_for_review(items, SampleStrategy::TopPositive, 1, 0)) == std::vector<std::string>{"a"});
  CHECK(sample_for_review(items, SampleStrategy::Uncertainty, 3, 0).size() == 3);
  const auto all = ids_of(sample_for_review(items, SampleStrategy::Random, 3, 5));
  CHECK(std::set<std::string>{"a", "b", "c"} == std::set<std::string>(all.begin(), all.end()));
  CHECK(ids_of(sample_for_review(items, SampleStrategy::Random, 2, 5)) ==
        ids_of(sample_for_review(items, SampleStrategy::Random, 2, 5)));

  // Equal distance from 0.5 falls back to post_id order.
  const std::vector<ReviewItem> tied{item("z", 0.6), item("m", 0.4), item("q", 0.6)};
  CHECK(ids_of(sample_for_review(tied, SampleStrategy::Uncertainty, 3, 0)) == std::vector<std::string>{"m", "q", "z"});

  try {
    sample_for_review(items, SampleStrategy::Random, 4, 1);
    FAIL("expected SampleTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SampleTooLarge);
  }
  CHECK(parse_sample_strategy("top_positive") == SampleStrategy::TopPositive);
  CHECK_THROWS_AS(parse_sample_strategy("longest"), Error);
}

TEST_CASE("error categories") {
  CHECK(categorize(true, false, 2) == ErrorCategory::LexiconFalsePositive);
  CHECK(categorize(false, true, 0) == ErrorCategory::NonArchetypalFalseNegative);
  CHECK(categorize(true, true, 0) == ErrorCategory::Correct);
  CHECK(categorize(false, false, 3) == ErrorCategory::Correct);
  CHECK(categorize(true, false, 0) == ErrorCategory::OtherError);
  CHECK(categorize(false, true, 1) == ErrorCategory::OtherError);
  for (auto c : {ErrorCategory::LexiconFalsePositive, ErrorCategory::NonArchetypalFalseNegative,
                 ErrorCategory::OtherError, ErrorCategory::Correct})
    CHECK(parse_error_category(to_string(c)) == c);
}

TEST_CASE("disagreement report partitions the items") {
  std::vector<ReviewItem> items{item("a", 0.9, 2), item("b", 0.2, 0), item("c", 0.8, 0), item("d", 0.1, 1),
                                item("e", 0.7, 1)};
  attach_expert_labels(items, {{"a", false}, {"b", true}, {"c", true}, {"d", true}, {"e", false}});
  const auto report = disagreement_report(items);
  CHECK(report.count(ErrorCategory::LexiconFalsePositive) == 2);
  CHECK(report.count(ErrorCategory::NonArchetypalFalseNegative) == 1);
  CHECK(report.count(ErrorCategory::OtherError) == 1);
  CHECK(report.count(ErrorCategory::Correct) == 1);
  std::size_t total = 0;
  for (auto c : report.counts) total += c;
  CHECK(total == items.size());
  for (const auto& i : report.items) CHECK(i.error_category.has_value() == i.expert_label.has_value());
  const auto j = report.to_json();
  CHECK(j["total"] == 5);

  auto missing = items;
  missing.push_back(item("f", 0.3));
  try {
    disagreement_report(missing);
    FAIL("expected MissingExpertLabels");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingExpertLabels);
    CHECK(std::string(e.what()).find("f") != std::string::npos);
  }
}

TEST_CASE("review items round-trip through JSON") {
  auto a = item("a", 0.25, 3);
  a.expert_label = true;
  a.error_category = ErrorCategory::OtherError;
  const auto back = review_item_from_json(to_json(a));
  CHECK(back.post_id == "a");
  CHECK(back.model_score == 0.25);
  CHECK(back.expert_label == true);
  CHECK(back.error_category == ErrorCategory::OtherError);
  CHECK(back.lexicon_hit_count == 3);
  CHECK_THROWS_AS(review_item_from_json(Json::parse("{\"post_id\": 3}")), Error);
}

TEST_CASE("batch inference") {
  models::SyntheticConfig cfg;
  cfg.posts = 300;
  cfg.positive_rate = 0.1;
  const auto syn = models::make_synthetic_corpus(cfg);
  models::ModelSpec spec;
  const auto model = models::train_model(spec, syn.data, 1, true);

  lexicon::Lexicon lex;
  for (const auto& t : syn.hate_terms) lex.add({t, "custom", ""});
  const lexicon::Matcher matcher(lex);

  std::vector<corpus::CleanPost> posts;
  for (std::size_t i = 0; i < 50; ++i) {
    const auto& e = syn.data.examples[i];
    corpus::CleanPost p;
    p.post_id = e.id;
    p.tokens = e.tokens;
    for (const auto& t : e.tokens) p.text += t + U" ";
    p.lexicon_hits = matcher.match(p.text, p.post_id);
    posts.push_back(p);
  }
  CHECK(review::infer_batch(model, {}).empty());
  const auto stored = review::infer_batch(model, posts);
  const auto recount = review::infer_batch(model, posts, matcher);
  REQUIRE(stored.size() == posts.size());
  for (std::size_t i = 0; i < posts.size(); ++i) {
    CHECK(stored[i].post_id == posts[i].post_id);
    CHECK(stored[i].model_score >= 0.0);
    CHECK(stored[i].model_score <= 1.0);
    CHECK(stored[i].lexicon_hit_count == posts[i].lexicon_hits.size());
    CHECK(recount[i].lexicon_hit_count == matcher.count(posts[i].text));
    const auto p = models::predict(model, posts[i].tokens);
    CHECK(stored[i].model_score == p.score);
    CHECK(stored[i].model_label == p.hate);
    CHECK_FALSE(stored[i].expert_label);
  }
}
