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
#include <string>
#include <string_view>
#include <vector>

#include "hatelab/segment/syllable.hpp"

namespace hatelab::encoding {
class Normalizer;
}

namespace hatelab::segment {

struct Token {
  std::u32string text;
  std::size_t first = 0;  // syllable indices, inclusive
  std::size_t last = 0;
  bool in_dictionary = false;

  bool operator==(const Token&) const = default;
};

// Reads a one-entry-per-line list (blank lines and `#` comments skipped),
// normalizing every entry. Duplicates are kept; callers decide.
std::vector<std::u32string> load_word_list(const std::filesystem::path& path,
                                           const encoding::Normalizer& normalizer);

// Trie over syllable sequences.
class Dictionary {
 public:
  Dictionary();

  // Entries are segmented with the syllable rules; entries containing
  // non-Myanmar text are skipped.
  static Dictionary from_words(const std::vector<std::u32string>& words);
  static Dictionary load(const std::filesystem::path& path, const encoding::Normalizer& normalizer);

  void insert(const std::vector<std::u32string>& syllables);

  // Length in syllables of the longest entry that prefixes
  // syllables[from..]; 0 if none.
  std::size_t longest_match(const std::vector<Syllable>& syllables, std::size_t from) const;

  std::size_t size() const noexcept { return entries_; }

 private:
  struct Node {
    std::vector<std::pair<std::u32string, std::size_t>> next;  // sorted by key
    bool terminal = false;
  };

  std::size_t child(std::size_t node, std::u32string_view key) const;

  std::vector<Node> nodes_;
  std::size_t entries_ = 0;
};

// Greedy longest match left to right. Myanmar syllables with no dictionary
// entry become single-syllable tokens; each Other syllable is one token.
std::vector<Token> segment_words(const std::vector<Syllable>& syllables, const Dictionary& dictionary);

}  // namespace hatelab::segment
