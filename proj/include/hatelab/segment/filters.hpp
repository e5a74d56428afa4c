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
#include <unordered_set>
#include <utility>
#include <vector>

#include "hatelab/segment/words.hpp"

namespace hatelab::segment {

using StopList = std::unordered_set<std::u32string>;

StopList load_stoplist(const std::filesystem::path& path, const encoding::Normalizer& normalizer);

// Drops tokens whose exact text is in the list; order preserved.
std::vector<Token> remove_stopwords(const std::vector<Token>& tokens, const StopList& stoplist);

// Myanmar-script codepoints over non-whitespace codepoints; 0 for blank text.
double burmese_ratio(std::u32string_view text);

// Inclusive codepoint intervals read from `first<TAB>last[<TAB>name]` hex TSV.
class EmojiRanges {
 public:
  static EmojiRanges parse(std::string_view tsv);
  static EmojiRanges load(const std::filesystem::path& path);
  static const EmojiRanges& shipped();

  bool contains(char32_t cp) const;
  std::size_t size() const noexcept { return ranges_.size(); }

 private:
  std::vector<std::pair<char32_t, char32_t>> ranges_;  // sorted, merged
};

std::u32string strip_emoji(std::u32string_view text, const EmojiRanges& ranges);

}  // namespace hatelab::segment
