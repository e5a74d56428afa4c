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

#include "hatelab/encoding/normalize.hpp"

#include <algorithm>

#include "hatelab/text/utf8.hpp"
#include "hatelab/util/error.hpp"
#include "hatelab/util/io.hpp"

namespace hatelab::encoding {

int sign_rank(char32_t cp) noexcept {
  switch (cp) {
    case 0x103B: return 1;
    case 0x103C: return 2;
    case 0x103D: return 3;
    case 0x103E: return 4;
    case 0x1031: return 5;
    case 0x102D: case 0x102E: case 0x1032: return 6;
    case 0x102F: case 0x1030: return 7;
    case 0x102B: case 0x102C: return 8;
    case 0x1036: return 9;
    case 0x1037: return 10;
    case 0x103A: return 11;
    case 0x1038: return 12;
    default: return 0;
  }
}

void canonical_order(std::u32string& text) {
  auto by_rank = [](char32_t a, char32_t b) { return sign_rank(a) < sign_rank(b); };
  auto it = text.begin();
  while (it != text.end()) {
    if (sign_rank(*it) == 0) {
      ++it;
      continue;
    }
    auto run_end = std::find_if(it, text.end(), [](char32_t c) { return sign_rank(c) == 0; });
    std::stable_sort(it, run_end, by_rank);
    it = run_end;
  }
}

Normalizer Normalizer::load(const std::filesystem::path& dir) {
  return Normalizer(RuleTable::load(dir / "zawgyi_rules.tsv"), MarkerSet::load(dir / "encoding_markers.tsv"));
}

const Normalizer& Normalizer::shipped() {
  static const Normalizer instance = load(data_dir());
  return instance;
}

std::u32string Normalizer::zawgyi_to_unicode(std::u32string_view text) const {
  std::u32string out = rules_.apply(text);
  canonical_order(out);
  return out;
}

Normalized Normalizer::normalize(std::u32string_view text, double threshold) const {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "detection threshold must lie in (0, 1)");
  }
  Normalized result;
  if (markers_.detect(text, threshold).label == EncodingLabel::Zawgyi) {
    result.text = rules_.apply(text);
    result.was_zawgyi = true;
  } else {
    result.text = std::u32string(text);
  }
  canonical_order(result.text);
  return result;
}

std::string Normalizer::normalize_utf8(std::string_view text, double threshold) const {
  return text::encode_utf8(normalize(text::decode_utf8(text), threshold).text);
}

}  // namespace hatelab::encoding
