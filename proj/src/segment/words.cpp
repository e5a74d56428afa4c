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

#include "hatelab/segment/words.hpp"

#include <algorithm>

#include "hatelab/encoding/normalize.hpp"
#include "hatelab/text/utf8.hpp"
#include "hatelab/util/io.hpp"

namespace hatelab::segment {

std::vector<std::u32string> load_word_list(const std::filesystem::path& path,
                                           const encoding::Normalizer& normalizer) {
  std::vector<std::u32string> out;
  for (const auto& line : split_lines(read_file(path))) {
    const auto entry = trim(line);
    if (entry.empty() || entry.front() == '#') continue;
    out.push_back(normalizer.normalize(text::decode_utf8(entry)).text);
  }
  return out;
}

Dictionary::Dictionary() : nodes_(1) {}

Dictionary Dictionary::from_words(const std::vector<std::u32string>& words) {
  Dictionary dict;
  for (const auto& word : words) {
    const auto syllables = segment_syllables_unchecked(word);
    if (syllables.empty()) continue;
    const bool all_myanmar = std::all_of(syllables.begin(), syllables.end(),
                                         [](const Syllable& s) { return s.kind == SyllableKind::Myanmar; });
    if (!all_myanmar) continue;
    std::vector<std::u32string> keys;
    keys.reserve(syllables.size());
    for (const auto& s : syllables) keys.push_back(s.text);
    dict.insert(keys);
  }
  return dict;
}

Dictionary Dictionary::load(const std::filesystem::path& path, const encoding::Normalizer& normalizer) {
  return from_words(load_word_list(path, normalizer));
}

std::size_t Dictionary::child(std::size_t node, std::u32string_view key) const {
  const auto& next = nodes_[node].next;
  auto it = std::lower_bound(next.begin(), next.end(), key,
                             [](const auto& entry, std::u32string_view k) { return entry.first < k; });
  if (it == next.end() || it->first != key) return 0;
  return it->second;
}

void Dictionary::insert(const std::vector<std::u32string>& syllables) {
  if (syllables.empty()) return;
  std::size_t node = 0;
  for (const auto& key : syllables) {
    std::size_t found = child(node, key);
    if (found == 0) {
      found = nodes_.size();
      nodes_.emplace_back();
      auto& next = nodes_[node].next;
      auto it = std::lower_bound(next.begin(), next.end(), key,
                                 [](const auto& entry, const std::u32string& k) { return entry.first < k; });
      next.insert(it, {key, found});
    }
    node = found;
  }
  if (!nodes_[node].terminal) ++entries_;
  nodes_[node].terminal = true;
}

std::size_t Dictionary::longest_match(const std::vector<Syllable>& syllables, std::size_t from) const {
  std::size_t node = 0;
  std::size_t best = 0;
  for (std::size_t i = from; i < syllables.size(); ++i) {
    if (syllables[i].kind != SyllableKind::Myanmar) break;
    node = child(node, syllables[i].text);
    if (node == 0) break;
    if (nodes_[node].terminal) best = i - from + 1;
  }
  return best;
}

std::vector<Token> segment_words(const std::vector<Syllable>& syllables, const Dictionary& dictionary) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < syllables.size()) {
    if (syllables[i].kind == SyllableKind::Other) {
      tokens.push_back({syllables[i].text, i, i, false});
      ++i;
      continue;
    }
    const std::size_t len = dictionary.longest_match(syllables, i);
    if (len == 0) {
      tokens.push_back({syllables[i].text, i, i, false});
      ++i;
      continue;
    }
    Token token{{}, i, i + len - 1, true};
    for (std::size_t k = i; k < i + len; ++k) token.text += syllables[k].text;
    tokens.push_back(std::move(token));
    i += len;
  }
  return tokens;
}

}  // namespace hatelab::segment
