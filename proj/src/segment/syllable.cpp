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

#include "hatelab/segment/syllable.hpp"

#include <algorithm>

#include "hatelab/encoding/normalize.hpp"
#include "hatelab/text/utf8.hpp"
#include "hatelab/util/error.hpp"

namespace hatelab::segment {

namespace {

enum class Cls { Base, Virama, Asat, DotBelow, Sign, Digit, Punct, NonMyanmar };

Cls classify(char32_t cp) {
  if (!text::is_myanmar(cp)) return Cls::NonMyanmar;
  if (cp <= 0x102A || cp == 0x103F || cp == 0x104E) return Cls::Base;
  if (cp == 0x1039) return Cls::Virama;
  if (cp == 0x103A) return Cls::Asat;
  if (cp == 0x1037) return Cls::DotBelow;
  if (cp <= 0x103E) return Cls::Sign;
  if (cp <= 0x1049) return Cls::Digit;
  if (cp <= 0x104F) return Cls::Punct;
  // Extension letters used for Mon, Shan and Karen.
  if ((cp >= 0x1050 && cp <= 0x1055) || (cp >= 0x105A && cp <= 0x105D) || cp == 0x1061 ||
      (cp >= 0x1065 && cp <= 0x1066) || (cp >= 0x106E && cp <= 0x1070) || (cp >= 0x1075 && cp <= 0x1081) ||
      cp == 0x108E) {
    return Cls::Base;
  }
  if (cp >= 0x1090 && cp <= 0x1099) return Cls::Digit;
  if (cp >= 0x109E) return Cls::Punct;
  return Cls::Sign;
}

// A consonant followed by asat (optionally through a dot below) or by a
// virama closes the preceding syllable instead of opening a new one.
bool closes_previous(std::u32string_view text, std::size_t i) {
  std::size_t j = i + 1;
  if (j < text.size() && text[j] == 0x1037) ++j;
  if (j >= text.size()) return false;
  return text[j] == 0x103A || (text[j] == 0x1039 && j == i + 1);
}

bool after_kinzi(std::u32string_view text, std::size_t i) {
  return i >= 3 && text[i - 1] == 0x1039 && text[i - 2] == 0x103A && text[i - 3] == 0x1004;
}

}  // namespace

std::vector<Syllable> segment_syllables_unchecked(std::u32string_view text) {
  std::vector<Syllable> out;
  auto open = [&](std::size_t i, SyllableKind kind) {
    out.push_back({std::u32string(1, text[i]), i, i + 1, kind});
  };
  auto extend = [&](std::size_t i) {
    out.back().text.push_back(text[i]);
    out.back().end = i + 1;
  };
  Cls prev_cls = Cls::NonMyanmar;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const Cls cls = classify(text[i]);
    const bool in_myanmar = !out.empty() && out.back().kind == SyllableKind::Myanmar && out.back().end == i;
    switch (cls) {
      case Cls::NonMyanmar:
        if (!out.empty() && out.back().kind == SyllableKind::Other && out.back().end == i) extend(i);
        else open(i, SyllableKind::Other);
        break;
      case Cls::Base:
        if (in_myanmar && prev_cls != Cls::Digit && prev_cls != Cls::Punct &&
            ((prev_cls == Cls::Virama && !after_kinzi(text, i)) || closes_previous(text, i))) {
          extend(i);
        } else {
          open(i, SyllableKind::Myanmar);
        }
        break;
      case Cls::Digit:
        if (in_myanmar && prev_cls == Cls::Digit) extend(i);
        else open(i, SyllableKind::Myanmar);
        break;
      case Cls::Punct:
        open(i, SyllableKind::Myanmar);
        break;
      case Cls::Virama: case Cls::Asat: case Cls::DotBelow: case Cls::Sign:
        if (in_myanmar && prev_cls != Cls::Punct && prev_cls != Cls::Digit) extend(i);
        else open(i, SyllableKind::Myanmar);
        break;
    }
    prev_cls = cls;
  }
  return out;
}

std::vector<Syllable> segment_syllables(std::u32string_view text, const encoding::MarkerSet& markers) {
  if (markers.detect(text).label == encoding::EncodingLabel::Zawgyi) {
    throw Error(ErrorCode::NotNormalized, "text reads as Zawgyi; normalize it first");
  }
  return segment_syllables_unchecked(text);
}

std::vector<Syllable> segment_syllables(std::u32string_view text) {
  return segment_syllables(text, encoding::Normalizer::shipped().markers());
}

std::size_t myanmar_syllable_count(const std::vector<Syllable>& syllables) {
  return static_cast<std::size_t>(std::count_if(syllables.begin(), syllables.end(), [](const Syllable& s) {
    return s.kind == SyllableKind::Myanmar;
  }));
}

}  // namespace hatelab::segment
