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
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hatelab/lexicon/lexicon.hpp"

namespace hatelab::lexicon {

struct TermHit {
  HateTerm term;
  std::size_t start = 0;  // codepoint offsets
  std::size_t end = 0;
  std::string post_id;
};

// Aho-Corasick automaton over the lexicon's terms; immutable after build.
class Matcher {
 public:
  explicit Matcher(const Lexicon& lexicon);

  // Every occurrence of every term, overlaps included, ordered by start
  // offset and then by length, longest first.
  std::vector<TermHit> match(std::u32string_view text, std::string_view post_id = {}) const;

  // Same order as match(), as (term index, start) pairs.
  std::vector<std::pair<std::size_t, std::size_t>> match_indices(std::u32string_view text) const;

  std::size_t count(std::u32string_view text) const;

  const Lexicon& lexicon() const noexcept { return lexicon_; }

 private:
  struct Node {
    std::vector<std::pair<char32_t, std::uint32_t>> next;  // sorted goto edges
    std::uint32_t fail = 0;
    std::uint32_t out_link = 0;   // nearest proper suffix node with a term, 0 if none
    std::int64_t term = -1;       // index of the term ending here
  };

  std::uint32_t edge(std::uint32_t node, char32_t c) const;
  std::uint32_t step(std::uint32_t node, char32_t c) const;

  Lexicon lexicon_;
  std::vector<Node> nodes_;
};

std::vector<TermHit> match_terms(const Matcher& matcher, std::u32string_view text, std::string_view post_id);

}  // namespace hatelab::lexicon
