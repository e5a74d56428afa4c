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
#include "hatelab/segment/filters.hpp"
#include "hatelab/segment/syllable.hpp"
#include "hatelab/segment/words.hpp"
#include "hatelab/util/error.hpp"
#include "hatelab/util/random.hpp"
#include "test_support.hpp"

using namespace hatelab;
using namespace hatelab::segment;
using hatelab::testing::u32;
using hatelab::testing::u8;

namespace {

std::vector<std::string> texts(const std::vector<Syllable>& syllables) {
  std::vector<std::string> out;
  for (const auto& s : syllables) out.push_back(u8(s.text));
  return out;
}

std::u32string concat(const std::vector<Syllable>& syllables) {
  std::u32string out;
  for (const auto& s : syllables) out += s.text;
  return out;
}

std::vector<Token> tok(std::initializer_list<const char*> words) {
  std::vector<Token> out;
  std::size_t i = 0;
  for (const char* w : words) {
    out.push_back(Token{u32(w), i, i, false});
    ++i;
  }
  return out;
}

}  // namespace

TEST_CASE("syllable boundaries") {
  const auto one = segment_syllables(u32("မာ"));
  REQUIRE(one.size() == 1);
  CHECK(one[0].kind == SyllableKind::Myanmar);

  const auto two = segment_syllables(U"မြန်မာ");
  CHECK(texts(two) == std::vector<std::string>{"မြန်", "မာ"});
  CHECK(two[0].start == 0);
  CHECK(two[0].end == 4);
  CHECK(two[1].start == 4);
  CHECK(two[1].end == 6);

  const auto latin = segment_syllables(U"ok");
  REQUIRE(latin.size() == 1);
  CHECK(latin[0].kind == SyllableKind::Other);
  CHECK(myanmar_syllable_count(latin) == 0);

  CHECK(texts(segment_syllables(u32("ကျွန်တော်"))) == std::vector<std::string>{"ကျွန်", "တော်"});
  CHECK(texts(segment_syllables(u32("ဗုဒ္ဓ"))) == std::vector<std::string>{"ဗုဒ္ဓ"});
  CHECK(texts(segment_syllables(u32("မာ ok မာ"))) == std::vector<std::string>{"မာ", " ok ", "မာ"});
  CHECK(segment_syllables(U"").empty());
}

TEST_CASE("Zawgyi text is rejected") {
  try {
    segment_syllables(U"ေမ");
    FAIL("expected NotNormalized");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotNormalized);
  }
  CHECK(segment_syllables_unchecked(U"ေမ").size() >= 1);
}

TEST_CASE("reconstruction and monotone counting on random text") {
  Rng rng(9);
  for (int i = 0; i < 300; ++i) {
    std::u32string s;
    const auto len = rng.below(25);
    for (std::uint64_t k = 0; k < len; ++k) {
      const auto r = rng.below(10);
      if (r == 0) s.push_back(U'a' + static_cast<char32_t>(rng.below(26)));
      else if (r == 1) s.push_back(U' ');
      else s.push_back(static_cast<char32_t>(0x1000 + rng.below(0x60)));
    }
    const auto syl = segment_syllables_unchecked(s);
    CHECK(concat(syl) == s);
    std::size_t pos = 0;
    for (const auto& y : syl) {
      CHECK(y.start == pos);
      CHECK(y.end == pos + y.text.size());
      pos = y.end;
      if (y.kind == SyllableKind::Myanmar) {
        for (char32_t c : y.text) CHECK(text::is_myanmar(c));
      }
    }
    // Appending "ka + aa" after a complete syllable adds exactly one.
    const auto base = myanmar_syllable_count(syl);
    const auto more = myanmar_syllable_count(segment_syllables_unchecked(s + U" ကာ"));
    CHECK(more == base + 1);
  }
}

TEST_CASE("greedy longest-match word segmentation") {
  const auto s1 = u32("ကျောင်း");
  const auto s2 = u32("သား");
  const auto s3 = u32("မာ");
  const auto syl = segment_syllables(s1 + s2 + s3);
  REQUIRE(syl.size() == 3);

  const auto d1 = Dictionary::from_words({s1 + s2});
  const auto t1 = segment_words(syl, d1);
  REQUIRE(t1.size() == 2);
  CHECK(t1[0].text == s1 + s2);
  CHECK(t1[0].in_dictionary);
  CHECK(t1[0].first == 0);
  CHECK(t1[0].last == 1);
  CHECK(t1[1].text == s3);
  CHECK_FALSE(t1[1].in_dictionary);

  const auto d2 = Dictionary::from_words({s1, s1 + s2 + s3});
  const auto t2 = segment_words(syl, d2);
  REQUIRE(t2.size() == 1);
  CHECK(t2[0].text == s1 + s2 + s3);

  CHECK(segment_words({}, d2).empty());
  CHECK(d2.size() == 2);
}

TEST_CASE("word tokens partition the Myanmar text") {
  const auto& n = encoding::Normalizer::shipped();
  const auto dict = Dictionary::load(data_dir() / "myanmar_dictionary.txt", n);
  CHECK(dict.size() > 100);
  const auto text = u32("မြန်မာနိုင်ငံ ရန်ကုန် hello ကျောင်းသားများ");
  const auto syl = segment_syllables(text);
  const auto tokens = segment_words(syl, dict);
  std::u32string myanmar_in, joined;
  for (const auto& s : syl) if (s.kind == SyllableKind::Myanmar) myanmar_in += s.text;
  for (const auto& t : tokens) {
    if (!t.in_dictionary) CHECK(t.first == t.last);
    if (syl[t.first].kind == SyllableKind::Myanmar) joined += t.text;
  }
  CHECK(joined == myanmar_in);
  CHECK(tokens.front().text == u32("မြန်မာနိုင်ငံ"));
  CHECK(tokens.front().in_dictionary);
}

TEST_CASE("stopword removal") {
  const StopList stop{U"the"};
  const auto out = remove_stopwords(tok({"a", "the", "b"}), stop);
  REQUIRE(out.size() == 2);
  CHECK(out[0].text == U"a");
  CHECK(out[1].text == U"b");
  CHECK(remove_stopwords(tok({"a", "b"}), StopList{}).size() == 2);
  CHECK(remove_stopwords(tok({"the", "the"}), stop).empty());

  const auto shipped = load_stoplist(data_dir() / "stopwords.txt", encoding::Normalizer::shipped());
  CHECK(shipped.count(u32("ကို")) == 1);
}

TEST_CASE("burmese ratio") {
  CHECK(burmese_ratio(u32("မာ")) == 1.0);
  CHECK(burmese_ratio(u32("မာab")) == 0.5);
  CHECK(burmese_ratio(U"") == 0.0);
  CHECK(burmese_ratio(U"   ") == 0.0);
  CHECK(burmese_ratio(u32("မာ ab")) == 0.5);
}

TEST_CASE("emoji stripping") {
  const auto& r = EmojiRanges::shipped();
  CHECK(strip_emoji(U"hi\U0001F600", r) == U"hi");
  const auto burmese = u32("မြန်မာ");
  CHECK(strip_emoji(burmese, r) == burmese);
  CHECK(strip_emoji(U"\U0001F600❤️\U0001F44D", r).empty());
  CHECK(strip_emoji(U"a\U0001F468‍\U0001F469b", r) == U"ab");

  const auto custom = EmojiRanges::parse("0061\t0062\n0063\t0063\tname\n");
  CHECK(custom.size() == 1);
  CHECK(strip_emoji(U"abcd", custom) == U"d");
  CHECK_THROWS_AS(EmojiRanges::parse("zz\t10\n"), Error);
}
