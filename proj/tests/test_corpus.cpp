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
#include <map>
#include <set>

#include "fixtures/posts.hpp"
#include "hatelab/corpus/csv.hpp"
#include "hatelab/corpus/ingest.hpp"
#include "hatelab/corpus/pipeline.hpp"
#include "hatelab/corpus/timestamp.hpp"
#include "hatelab/lexicon/matcher.hpp"
#include "hatelab/segment/syllable.hpp"
#include "hatelab/util/error.hpp"
#include "test_support.hpp"

using namespace hatelab;
using namespace hatelab::corpus;
using hatelab::testing::u32;

namespace {

const std::string kHeader = "post_id,source_id,source_name,created_at,fetched_at,text,url,interactions\n";

RawPost post(std::string id, std::string source, std::string text, std::int64_t fetched = 0) {
  RawPost p;
  p.post_id = std::move(id);
  p.source_id = std::move(source);
  p.text = std::move(text);
  if (fetched) p.fetched_at = Timestamp{fetched, 0};
  return p;
}

lexicon::Matcher test_matcher() {
  lexicon::Lexicon lex;
  lex.add({u32("လူမျိုး"), "custom", ""});
  lex.add({u32("ကလေး"), "custom", ""});
  return lexicon::Matcher(lex);
}

}  // namespace

TEST_CASE("csv reader") {
  const auto rows = parse_csv("a,b\n\"x,1\",\"say \"\"hi\"\"\"\n\"multi\nline\",z\r\n");
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].fields == std::vector<std::string>{"x,1", "say \"hi\""});
  CHECK(rows[2].fields == std::vector<std::string>{"multi\nline", "z"});
  CHECK(rows[2].line == 3);
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("q\"") == "\"q\"\"\"");
  const std::vector<std::string> fields{"1", "a,b", "line\nbreak", ""};
  CHECK(parse_csv(csv_row(fields))[0].fields == fields);

  CsvReader reader("\"open,1\n");
  CsvRecord r;
  CHECK(reader.next(r));
  CHECK(reader.last_malformed());
}

TEST_CASE("timestamps") {
  const auto t = parse_timestamp("2021-02-01T10:00:00Z");
  REQUIRE(t);
  CHECK(t->seconds == 1612173600);
  CHECK(parse_timestamp("2021-02-01 10:00")->seconds == 1612173600);
  CHECK(parse_timestamp("2021-02-01T16:30:00+06:30")->seconds == 1612173600);
  CHECK(parse_timestamp("2021-02-01")->seconds == 1612137600);
  CHECK(parse_timestamp("2021-02-01T10:00:00.25Z")->nanos == 250000000);
  CHECK(format_timestamp(*t) == "2021-02-01T10:00:00Z");
  CHECK_FALSE(parse_timestamp("2021-02-30"));
  CHECK_FALSE(parse_timestamp("2021-13-01"));
  CHECK_FALSE(parse_timestamp("yesterday"));
  CHECK(parse_timestamp("2020-02-29"));
}

TEST_CASE("ingest well-formed and malformed rows") {
  const std::string ok = kHeader +
                         "1,s1,Page,2021-01-01T00:00:00Z,2021-01-02T00:00:00Z,hello,http://x,5\n"
                         "2,s1,Page,,,\"a, b\",,\n"
                         "1,s2,Page,,,dup id,,0\n";
  const auto r = ingest_csv(ok);
  CHECK(r.posts.size() == 3);
  CHECK(r.report.skipped.empty());
  CHECK(r.posts[1].text == "a, b");
  CHECK(r.posts[0].interactions == 5);

  const std::string bad = kHeader +
                          ",s1,Page,,,no id,,0\n"
                          "3,s1,Page,,,fine,,0\n"
                          "4,s1,Page,notatime,,x,,0\n"
                          "5,s1,Page,,,x,,-2\n"
                          "6,s1\n";
  const auto b = ingest_csv(bad);
  CHECK(b.posts.size() == 1);
  REQUIRE(b.report.skipped.size() == 4);
  CHECK(b.report.skipped[0].row == 1);
  CHECK(b.report.skipped[0].reason.find("post_id") != std::string::npos);
  CHECK(b.report.skipped[3].row == 5);

  // Columns in any order, extra columns ignored.
  const auto reordered =
      ingest_csv("text,extra,post_id,source_id,source_name,created_at,fetched_at,url,interactions\nhi,z,9,s,n,,,,\n");
  REQUIRE(reordered.posts.size() == 1);
  CHECK(reordered.posts[0].post_id == "9");
  CHECK(reordered.posts[0].text == "hi");

  try {
    ingest_csv("post_id,text\n1,x\n");
    FAIL("expected HeaderMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::HeaderMismatch);
    CHECK(std::string(e.what()).find("source_id") != std::string::npos);
  }
  try {
    ingest("/nonexistent/posts.csv");
    FAIL("expected FileUnreadable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::FileUnreadable);
  }
}

TEST_CASE("ingest round-trips the CSV writer") {
  const auto posts = testing::make_posts(200, 3);
  const auto back = ingest_csv(posts_to_csv(posts));
  REQUIRE(back.posts.size() == posts.size());
  for (std::size_t i = 0; i < posts.size(); ++i) {
    CHECK(back.posts[i].post_id == posts[i].post_id);
    CHECK(back.posts[i].text == posts[i].text);
    CHECK(back.posts[i].fetched_at == posts[i].fetched_at);
  }
}

TEST_CASE("non-text filter") {
  CHECK(is_non_text("http://a.b"));
  CHECK(is_non_text(""));
  CHECK(is_non_text("   "));
  CHECK(is_non_text("www.example.com https://x.y/z"));
  CHECK_FALSE(is_non_text("hello http://a.b"));
  CHECK_FALSE(is_non_text("www"));
  const auto kept = drop_non_text({post("1", "a", "x"), post("2", "a", "http://a.b"), post("3", "a", "")});
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].post_id == "1");
}

TEST_CASE("dedup keeps the latest fetch") {
  const auto out = dedup_latest({post("1", "a", "old", 100), post("2", "a", "x", 5), post("1", "a", "new", 200)});
  REQUIRE(out.size() == 2);
  CHECK(out[0].post_id == "1");
  CHECK(out[0].text == "new");
  const auto tie = dedup_latest({post("1", "a", "first", 100), post("1", "a", "second", 100)});
  REQUIRE(tie.size() == 1);
  CHECK(tie[0].text == "second");
  const auto missing = dedup_latest({post("1", "a", "stamped", 1), post("1", "a", "unstamped")});
  CHECK(missing[0].text == "stamped");
  const std::vector<RawPost> unique{post("1", "a", "x"), post("2", "b", "y")};
  CHECK(dedup_latest(unique).size() == 2);
}

TEST_CASE("constrained shuffle") {
  std::size_t left = 99;
  const auto order = constrained_order({"A", "A", "B"}, 1, &left);
  CHECK(left == 0);
  const std::vector<std::string> src{"A", "A", "B"};
  CHECK(src[order[0]] == "A");
  CHECK(src[order[1]] == "B");
  CHECK(src[order[2]] == "A");

  constrained_order({"A", "A", "A"}, 1, &left);
  CHECK(left == 2);

  // Random feasible multisets always end with zero adjacencies.
  Rng rng(77);
  for (int round = 0; round < 300; ++round) {
    const auto n = 1 + rng.below(30);
    std::vector<std::string> sources;
    for (std::uint64_t i = 0; i < n; ++i) sources.push_back(std::string(1, static_cast<char>('A' + rng.below(4))));
    std::map<std::string, std::size_t> freq;
    for (const auto& s : sources) ++freq[s];
    std::size_t biggest = 0;
    for (const auto& [_, c] : freq) biggest = std::max(biggest, c);
    const auto seed = rng.next();
    const auto perm = constrained_order(sources, seed, &left);
    auto sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) CHECK(sorted[i] == i);
    std::size_t adj = 0;
    for (std::size_t i = 1; i < perm.size(); ++i) adj += sources[perm[i]] == sources[perm[i - 1]];
    CHECK(adj == left);
    if (biggest <= (n + 1) / 2) CHECK(adj == 0);
    else CHECK(adj == 2 * biggest - n - 1);
    CHECK(constrained_order(sources, seed) == perm);
  }
}

TEST_CASE("pipeline examples") {
  const auto m = test_matcher();
  CleanConfig cfg;
  cfg.seed = 5;
  const std::vector<RawPost> posts{
      post("short", "a", "ကလေး"),                         // two syllables
      post("english", "a", "a purely english sentence"),  // ratio 0
      post("keep", "b", "မြန်မာ လူမျိုး ကလေး"),
  };
  const auto out = clean_pipeline(posts, m, cfg);
  REQUIRE(out.posts.size() == 1);
  CHECK(out.posts[0].post_id == "keep");
  CHECK(out.posts[0].syllable_count == segment::myanmar_syllable_count(segment::segment_syllables(out.posts[0].text)));
  CHECK(out.posts[0].lexicon_hits.size() == 2);
  const auto& steps = out.report.steps;
  auto find = [&](const std::string& name) {
    return *std::find_if(steps.begin(), steps.end(), [&](const auto& s) { return s.name == name; });
  };
  CHECK(find("language_filter").removed_count == 1);
  CHECK(find("syllable_filter").removed_count == 1);

  const auto empty = clean_pipeline({post("x", "a", "hello")}, m, cfg);
  CHECK(empty.posts.empty());
  CHECK_FALSE(empty.report.warnings.empty());
}

TEST_CASE("pipeline on a 10k export: determinism, counts, adjacency, invariants") {
  const auto posts = testing::make_posts(10000, 11);
  const auto m = test_matcher();
  CleanConfig cfg;
  cfg.seed = 42;
  const auto a = clean_pipeline(posts, m, cfg);
  const auto b = clean_pipeline(posts, m, cfg);
  CHECK(corpus_to_jsonl(a.posts) == corpus_to_jsonl(b.posts));
  CHECK(a.report.to_json().dump() == b.report.to_json().dump());
  CHECK(a.posts.size() > 5000);
  CHECK(a.report.zawgyi_converted > 0);

  const auto& steps = a.report.steps;
  REQUIRE(steps.size() == 8);
  CHECK(steps.front().input_count == posts.size());
  for (std::size_t i = 0; i < steps.size(); ++i) {
    CHECK(steps[i].output_count <= steps[i].input_count);
    CHECK(steps[i].removed_count == steps[i].input_count - steps[i].output_count);
    if (i > 0) CHECK(steps[i].input_count == steps[i - 1].output_count);
  }
  CHECK(steps.back().output_count == a.posts.size());

  std::size_t adjacencies = 0;
  std::set<std::string> ids;
  const auto& emoji = TextResources::shipped().emoji;
  for (std::size_t i = 0; i < a.posts.size(); ++i) {
    const auto& p = a.posts[i];
    if (i > 0) adjacencies += p.source_id == a.posts[i - 1].source_id;
    CHECK(p.syllable_count >= 3);
    CHECK(ids.insert(p.post_id).second);
    CHECK(std::none_of(p.text.begin(), p.text.end(), [&](char32_t c) { return emoji.contains(c); }));
    for (const auto& h : p.lexicon_hits) CHECK(p.text.substr(h.start, h.end - h.start) == h.term.term);
  }
  CHECK(adjacencies == 0);
  CHECK(a.report.shuffle_adjacencies == 0);

  cfg.seed = 43;
  const auto c = clean_pipeline(posts, m, cfg);
  CHECK(c.posts.size() == a.posts.size());
  CHECK(corpus_to_jsonl(c.posts) != corpus_to_jsonl(a.posts));
}

TEST_CASE("corpus JSONL round trip") {
  const auto posts = testing::make_posts(300, 8);
  CleanConfig cfg;
  cfg.seed = 1;
  const auto out = clean_pipeline(posts, test_matcher(), cfg);
  testing::TempDir dir;
  write_corpus(dir / "c.jsonl", out.posts);
  const auto back = read_corpus(dir / "c.jsonl");
  CHECK(corpus_to_jsonl(back) == corpus_to_jsonl(out.posts));
  CHECK_THROWS_AS(corpus_from_jsonl("{\"post_id\": 1}\n"), Error);
}
