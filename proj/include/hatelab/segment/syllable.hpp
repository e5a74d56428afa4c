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
#include <string>
#include <string_view>
#include <vector>

namespace hatelab::encoding {
class MarkerSet;
}

namespace hatelab::segment {

enum class SyllableKind { Myanmar, Other };

struct Syllable {
  std::u32string text;
  std::size_t start = 0;  // codepoint offsets into the source
  std::size_t end = 0;
  SyllableKind kind = SyllableKind::Other;

  bool operator==(const Syllable&) const = default;
};

// Breaks normalized text into syllables. A Myanmar syllable begins at each
// base consonant unless the consonant is stacked (after a virama that is not
// part of kinzi) or closed by asat or virama, in which case it ends the
// previous syllable. Dependent signs attach to the current syllable, Myanmar
// digit runs form one syllable, Myanmar punctuation forms its own. Maximal runs
// of non-Myanmar text are one Other syllable each.
//
// Throws Error(NotNormalized) if `markers` classify the text as Zawgyi.
std::vector<Syllable> segment_syllables(std::u32string_view text, const encoding::MarkerSet& markers);

// Checks against the shipped marker set.
std::vector<Syllable> segment_syllables(std::u32string_view text);

// Same breaking without the Zawgyi check.
std::vector<Syllable> segment_syllables_unchecked(std::u32string_view text);

std::size_t myanmar_syllable_count(const std::vector<Syllable>& syllables);

}  // namespace hatelab::segment
