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

#include "hatelab/encoding/normalize.hpp"
#include "hatelab/util/error.hpp"
#include "hatelab/util/random.hpp"
#include "test_support.hpp"

using namespace hatelab;
using namespace hatelab::encoding;
using hatelab::testing::u32;
using hatelab::testing::u8;

TEST_CASE("pattern dialect") {
  const auto p = Pattern::compile("a(b|c)+d");
  CHECK(p.group_count() == 1);
  auto m = p.search(U"xxabcbdyy");
  REQUIRE(m);
  CHECK(m->begin == 2);
  CHECK(m->end == 7);
  CHECK(m->group(U"xxabcbdyy", 1) == U"b");

  CHECK(Pattern::compile("[^a-c]").count(U"abxcy") == 2);
  CHECK(Pattern::compile("^a").count(U"aaa") == 1);
  CHECK(Pattern::compile("a$").count(U"aaa") == 1);
  CHECK(Pattern::compile("\\u1000\\u103A").count(u32("က်က်")) == 2);
  CHECK_FALSE(Pattern::compile("ab?c").search(U"abbc"));

  CHECK_THROWS_AS(Pattern::compile("a*"), Error);
  CHECK_THROWS_AS(Pattern::compile("(ab"), Error);
  CHECK_THROWS_AS(Pattern::compile("[b-a]"), Error);
}

TEST_CASE("rule table validation") {
  CHECK_THROWS_AS(RuleTable::parse("1\ta\tb\n1\tc\td\n"), Error);
  CHECK_THROWS_AS(RuleTable::parse("1\t(a)\t$2\n"), Error);
  CHECK_THROWS_AS(RuleTable::parse("x\ta\tb\n"), Error);
  const auto t = RuleTable::parse("# comment\n\n20\tb\tc\n10\ta\tb\n");
  REQUIRE(t.rules().size() == 2);
  CHECK(t.rules()[0].priority == 10);
  // a -> b then b -> c, so both end as c.
  CHECK(t.apply(U"ab") == U"cc");
  try {
    RuleTable::parse("5\t(\tb\n");
    FAIL("expected RuleTableInvalid");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RuleTableInvalid);
  }
}

TEST_CASE("golden pairs convert bit-exactly") {
  const auto& n = Normalizer::shipped();
  const auto rows = testing::data_rows("zawgyi_golden_pairs.tsv");
  REQUIRE(rows.size() >= 50);
  for (const auto& row : rows) {
    REQUIRE(row.size() == 2);
    auto out = n.zawgyi_to_unicode(u32(row[0]));
    canonical_order(out);
    CHECK_MESSAGE(u8(out) == row[1], row[0]);
  }
}

TEST_CASE("normalization is idempotent and leaves Unicode alone") {
  const auto& n = Normalizer::shipped();
  for (const auto& row : testing::data_rows("zawgyi_golden_pairs.tsv")) {
    auto once = n.zawgyi_to_unicode(u32(row[0]));
    canonical_order(once);
    const auto twice = n.normalize(once);
    CHECK(twice.text == once);
    CHECK_FALSE(twice.was_zawgyi);
    CHECK(u8(n.normalize(u32(row[1])).text) == row[1]);
  }
}

TEST_CASE("detector accuracy on the labelled fixture") {
  const auto& n = Normalizer::shipped();
  const auto rows = testing::data_rows("encoding_detection_fixture.tsv");
  REQUIRE(rows.size() >= 100);
  std::size_t correct = 0;
  for (const auto& row : rows) {
    const auto v = n.detect(u32(row[1]));
    if (to_string(v.label) == row[0]) ++correct;
  }
  CHECK(static_cast<double>(correct) / static_cast<double>(rows.size()) >= 0.95);
}

TEST_CASE("detection edge cases") {
  const auto& n = Normalizer::shipped();
  const auto none = n.detect(U"hello world");
  CHECK(none.label == EncodingLabel::Neutral);
  CHECK(none.score == 0.0);
  CHECK(n.normalize(U"").text.empty());
  CHECK(n.normalize(U"plain ascii").text == U"plain ascii");
  CHECK_THROWS_AS(n.normalize(U"x", 0.0), Error);
  CHECK_THROWS_AS(n.normalize(U"x", 1.0), Error);

  // A tie in evidence resolves to Unicode.
  const auto markers = MarkerSet::parse("zawgyi\t\\u1000\nunicode\t\\u1001\n");
  const auto tie = markers.detect(U"ကခ");
  CHECK(tie.score == doctest::Approx(0.5));
  CHECK(tie.label == EncodingLabel::Unicode);
  CHECK(markers.detect(U"ကကခ").label == EncodingLabel::Zawgyi);
}

TEST_CASE("random Myanmar strings never crash the normalizer") {
  const auto& n = Normalizer::shipped();
  Rng rng(42);
  for (int i = 0; i < 500; ++i) {
    std::u32string s;
    const auto len = rng.below(20);
    for (std::uint64_t k = 0; k < len; ++k) {
      s.push_back(rng.below(8) == 0 ? U' ' : static_cast<char32_t>(0x1000 + rng.below(0xA0)));
    }
    const auto once = n.normalize(s);
    CHECK(n.normalize(once.text).text == once.text);
  }
}

TEST_CASE("detector marker examples") {
  const auto& n = Normalizer::shipped();
  CHECK(n.detect(U"ေမ").label == EncodingLabel::Zawgyi);
  CHECK(n.detect(U"က္က").label == EncodingLabel::Unicode);
  const auto conv = n.normalize(U"ေမ");
  CHECK(conv.text == U"မေ");
  CHECK(conv.was_zawgyi);
  CHECK(n.zawgyi_to_unicode(U"abc 123") == U"abc 123");
  CHECK(n.zawgyi_to_unicode(U"").empty());
}

TEST_CASE("canonical order sorts dependent signs") {
  // MA + U+102F (u) + U+103B (medial ya) -> medial first.
  std::u32string s = U"မုျ";
  canonical_order(s);
  CHECK(s == U"မျု");
  std::u32string latin = U"abc";
  canonical_order(latin);
  CHECK(latin == U"abc");
}

TEST_CASE("non-Myanmar codepoints survive conversion") {
  const auto& n = Normalizer::shipped();
  for (const auto& row : testing::data_rows("zawgyi_golden_pairs.tsv")) {
    const auto text = u32("[" + row[0] + "] x1");
    const auto out = n.normalize(text).text;
    std::u32string kept_in, kept_out;
    for (char32_t c : text) if (!text::is_myanmar(c)) kept_in.push_back(c);
    for (char32_t c : out) if (!text::is_myanmar(c)) kept_out.push_back(c);
    CHECK(kept_in == kept_out);
  }
}
