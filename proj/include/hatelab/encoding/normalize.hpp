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

#include <filesystem>
#include <string>
#include <string_view>

#include "hatelab/encoding/detect.hpp"
#include "hatelab/encoding/rules.hpp"

namespace hatelab::encoding {

// Storage rank of a Myanmar dependent sign inside a syllable
// (medials Y R W H, E vowel, upper, lower and A vowels, anusvara, dot below,
// asat, visarga). Returns 0 for codepoints that are not reorderable signs.
int sign_rank(char32_t cp) noexcept;

// Stable-sorts every maximal run of dependent signs by sign_rank. Consonants,
// stacked consonants (U+1039 + consonant) and non-Myanmar text are fixed points.
void canonical_order(std::u32string& text);

struct Normalized {
  std::u32string text;
  bool was_zawgyi = false;
};

// Detection, Zawgyi->Unicode conversion and canonical sign order over
// immutable tables. Safe to share across threads once constructed.
class Normalizer {
 public:
  Normalizer(RuleTable rules, MarkerSet markers) : rules_(std::move(rules)), markers_(std::move(markers)) {}

  // Loads zawgyi_rules.tsv and encoding_markers.tsv from `dir`.
  static Normalizer load(const std::filesystem::path& dir);
  static const Normalizer& shipped();

  EncodingVerdict detect(std::u32string_view text, double threshold = kDefaultDetectionThreshold) const {
    return markers_.detect(text, threshold);
  }

  // Unconditional conversion; the caller decides the text is Zawgyi.
  std::u32string zawgyi_to_unicode(std::u32string_view text) const;

  // Converts iff the verdict is Zawgyi, then applies canonical sign order.
  // Throws Error(InvalidArgument) unless 0 < threshold < 1.
  Normalized normalize(std::u32string_view text, double threshold = kDefaultDetectionThreshold) const;

  std::string normalize_utf8(std::string_view text, double threshold = kDefaultDetectionThreshold) const;

  const RuleTable& rules() const noexcept { return rules_; }
  const MarkerSet& markers() const noexcept { return markers_; }

 private:
  RuleTable rules_;
  MarkerSet markers_;
};

}  // namespace hatelab::encoding
