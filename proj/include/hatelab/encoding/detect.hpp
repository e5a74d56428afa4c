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
#include <filesystem>
#include <string_view>
#include <vector>

#include "hatelab/encoding/pattern.hpp"

namespace hatelab::encoding {

enum class EncodingLabel { Zawgyi, Unicode, Neutral };

std::string_view to_string(EncodingLabel label);

struct EncodingVerdict {
  EncodingLabel label = EncodingLabel::Neutral;
  double score = 0.0;  // zawgyi / (zawgyi + unicode); 0 when there is no evidence
  std::size_t zawgyi_marker_count = 0;
  std::size_t unicode_marker_count = 0;
};

inline constexpr double kDefaultDetectionThreshold = 0.5;

// Evidence patterns for each encoding, loaded from `kind<TAB>pattern` TSV
// where kind is `zawgyi` or `unicode`.
class MarkerSet {
 public:
  static MarkerSet parse(std::string_view tsv);
  static MarkerSet load(const std::filesystem::path& path);

  // Total function. A score equal to the threshold resolves to Unicode.
  EncodingVerdict detect(std::u32string_view text, double threshold = kDefaultDetectionThreshold) const;

  std::size_t zawgyi_pattern_count() const noexcept { return zawgyi_.size(); }
  std::size_t unicode_pattern_count() const noexcept { return unicode_.size(); }

 private:
  std::vector<Pattern> zawgyi_;
  std::vector<Pattern> unicode_;
};

}  // namespace hatelab::encoding
