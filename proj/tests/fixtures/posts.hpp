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

#include <string>
#include <vector>

#include "hatelab/corpus/ingest.hpp"
#include "hatelab/corpus/timestamp.hpp"
#include "hatelab/util/random.hpp"
#include "test_support.hpp"

namespace hatelab::testing {

// Mixed export: Burmese posts (some Zawgyi), English posts, URL-only and
// empty posts, short posts, emoji, and re-fetched duplicates.
inline std::vector<corpus::RawPost> make_posts(std::size_t n, std::uint64_t seed, std::size_t sources = 40) {
  static const std::vector<std::string> words = {
      "မြန်မာ", "ကျောင်း", "ကျောင်းသား", "လူမျိုး", "ဘာသာ", "အစိုးရ", "ရွေးကောက်ပွဲ", "ရန်ကုန်",
      "မန္တလေး", "နေပြည်တော်", "သတင်း", "ဒီနေ့", "ကောင်း", "မကောင်း", "ကလေး", "ဥပဒေ"};
  const auto zawgyi = data_rows("zawgyi_golden_pairs.tsv");
  Rng rng(seed);
  std::vector<corpus::RawPost> posts;
  const std::int64_t base = 1'600'000'000;
  for (std::size_t i = 0; i < n; ++i) {
    corpus::RawPost p;
    p.post_id = "p" + std::to_string(100000 + i);
    const auto src = rng.below(sources);
    p.source_id = "src" + std::to_string(src);
    p.source_name = "Page " + std::to_string(src);
    p.created_at = corpus::Timestamp{base + static_cast<std::int64_t>(i) * 60, 0};
    p.fetched_at = corpus::Timestamp{base + 86400 + static_cast<std::int64_t>(rng.below(1000)), 0};
    p.url = "https://example.org/" + p.post_id;
    p.interactions = static_cast<std::int64_t>(rng.below(500));
    const auto kind = rng.below(100);
    if (kind < 3) {
      p.text = "https://example.org/x" + std::to_string(i);
    } else if (kind < 5) {
      p.text = "";
    } else if (kind < 10) {
      p.text = "good morning everyone, see you at the meeting";
    } else if (kind < 13) {
      p.text = "မာ";
    } else if (kind < 20) {
      p.text = zawgyi[rng.below(zawgyi.size())][0] + " " + zawgyi[rng.below(zawgyi.size())][0] + " " +
               zawgyi[rng.below(zawgyi.size())][0];
    } else {
      const auto len = 3 + rng.below(8);
      for (std::uint64_t k = 0; k < len; ++k) {
        if (k) p.text += rng.below(3) == 0 ? "" : " ";
        p.text += words[rng.below(words.size())];
      }
      if (rng.below(10) == 0) p.text += " \xF0\x9F\x98\x80";
      if (rng.below(10) == 0) p.text += " ok";
    }
    p.created_at_text = corpus::format_timestamp(*p.created_at);
    p.fetched_at_text = corpus::format_timestamp(*p.fetched_at);
    posts.push_back(p);
    if (rng.below(20) == 0) {
      auto again = p;
      again.fetched_at->seconds += 3600;
      again.fetched_at_text = corpus::format_timestamp(*again.fetched_at);
      again.text += " ကောင်း";
      posts.push_back(again);
    }
  }
  return posts;
}

}  // namespace hatelab::testing
