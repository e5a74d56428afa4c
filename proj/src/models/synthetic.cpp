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

#include "hatelab/models/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "hatelab/util/error.hpp"
#include "hatelab/util/random.hpp"

namespace hatelab::models {

namespace {

constexpr char32_t kVowels[] = {0, 0x102C, 0x102D, 0x102E, 0x102F, 0x1030, 0x1031, 0x1032};
constexpr char32_t kFinals[] = {0, 0, 0x1004, 0x1014, 0x1019, 0x1000, 0x1010};

std::u32string syllable(Rng& rng) {
  std::u32string s;
  s.push_back(static_cast<char32_t>(0x1000 + rng.below(33)));
  const char32_t final_consonant = kFinals[rng.below(std::size(kFinals))];
  if (final_consonant != 0) {
    // Closed syllables take at most a short vowel sign.
    if (rng.below(2) == 0) s.push_back(0x102D);
    s.push_back(final_consonant);
    s.push_back(0x103A);
  } else if (const char32_t v = kVowels[rng.below(std::size(kVowels))]; v != 0) {
    s.push_back(v);
  }
  return s;
}

std::vector<std::u32string> make_words(Rng& rng, std::size_t n, std::size_t min_syllables, std::set<std::u32string>& used) {
  std::vector<std::u32string> out;
  while (out.size() < n) {
    const std::size_t count = min_syllables + static_cast<std::size_t>(rng.below(2));
    std::u32string w;
    for (std::size_t i = 0; i < count; ++i) w += syllable(rng);
    if (used.insert(w).second) out.push_back(std::move(w));
  }
  return out;
}

class Zipf {
 public:
  explicit Zipf(std::size_t n) : cdf_(n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) cdf_[i] = s += 1.0 / static_cast<double>(i + 1);
    for (double& c : cdf_) c /= s;
  }
  std::size_t draw(Rng& rng) const {
    const double u = rng.unit();
    return std::min(static_cast<std::size_t>(std::upper_bound(cdf_.begin(), cdf_.end(), u) - cdf_.begin()),
                    cdf_.size() - 1);
  }

 private:
  std::vector<double> cdf_;
};

void insert_at_random(Rng& rng, std::vector<std::u32string>& words, const std::u32string& w) {
  const auto pos = static_cast<std::ptrdiff_t>(rng.below(words.size() + 1));
  words.insert(words.begin() + pos, w);
}

const std::u32string& pick(Rng& rng, const std::vector<std::u32string>& from) {
  return from[static_cast<std::size_t>(rng.below(from.size()))];
}

}  // namespace

SyntheticCorpus make_synthetic_corpus(const SyntheticConfig& c) {
  if (c.posts == 0 || c.vocabulary == 0 || c.hate_terms == 0 || c.targets == 0 || c.cues == 0 ||
      c.min_words == 0 || c.max_words < c.min_words || !(c.positive_rate >= 0.0 && c.positive_rate <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "invalid synthetic corpus configuration");
  }
  SyntheticCorpus out;
  Rng words_rng(derive_seed(c.seed, 1));
  std::set<std::u32string> used;
  out.general = make_words(words_rng, c.vocabulary, 1, used);
  out.hate_terms = make_words(words_rng, c.hate_terms, 2, used);
  out.targets = make_words(words_rng, c.targets, 2, used);
  out.cues = make_words(words_rng, c.cues, 1, used);

  const auto positives = static_cast<std::size_t>(std::llround(static_cast<double>(c.posts) * c.positive_rate));
  std::vector<char> label(c.posts, 0);
  std::fill(label.begin(), label.begin() + static_cast<std::ptrdiff_t>(positives), 1);
  Rng rng(derive_seed(c.seed, 2));
  rng.shuffle(std::span<char>(label));

  const Zipf zipf(out.general.size());
  const std::size_t width = std::to_string(c.posts).size() < 6 ? 6 : std::to_string(c.posts).size();
  out.data.examples.reserve(c.posts);
  for (std::size_t i = 0; i < c.posts; ++i) {
    Example e;
    std::string id = std::to_string(i + 1);
    e.id = "syn-" + std::string(width - id.size(), '0') + id;
    e.hate = label[i] != 0;
    const std::size_t length = c.min_words + static_cast<std::size_t>(rng.below(c.max_words - c.min_words + 1));
    for (std::size_t w = 0; w < length; ++w) e.tokens.push_back(out.general[zipf.draw(rng)]);
    if (e.hate) {
      if (rng.unit() < c.archetypal) {
        insert_at_random(rng, e.tokens, pick(rng, out.hate_terms));
        if (rng.unit() < 0.3) insert_at_random(rng, e.tokens, pick(rng, out.hate_terms));
        if (rng.unit() < 0.8) insert_at_random(rng, e.tokens, pick(rng, out.targets));
        if (rng.unit() < 0.7) insert_at_random(rng, e.tokens, pick(rng, out.cues));
      } else {
        if (rng.unit() < 0.9) insert_at_random(rng, e.tokens, pick(rng, out.targets));
        insert_at_random(rng, e.tokens, pick(rng, out.cues));
        if (rng.unit() < 0.9) insert_at_random(rng, e.tokens, pick(rng, out.cues));
      }
    } else {
      if (rng.unit() < c.benign_hate_use) insert_at_random(rng, e.tokens, pick(rng, out.hate_terms));
      if (rng.unit() < c.benign_target) insert_at_random(rng, e.tokens, pick(rng, out.targets));
      if (rng.unit() < c.benign_cue) insert_at_random(rng, e.tokens, pick(rng, out.cues));
    }
    out.data.examples.push_back(std::move(e));
  }
  return out;
}

}  // namespace hatelab::models
