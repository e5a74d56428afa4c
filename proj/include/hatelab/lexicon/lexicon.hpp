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
#include <unordered_map>
#include <utility>
#include <vector>

#include "hatelab/util/json.hpp"

namespace hatelab::encoding {
class Normalizer;
}

namespace hatelab::lexicon {

struct HateTerm {
  std::u32string term;
  std::string source;
  std::string note;

  bool operator==(const HateTerm&) const = default;
};

class Lexicon {
 public:
  Lexicon() = default;

  // Adds the term unless its text is already present; returns whether it was added.
  bool add(HateTerm term);

  const std::vector<HateTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool contains(std::u32string_view term) const;
  const HateTerm* find(std::u32string_view term) const;

  // Copy without the listed terms.
  Lexicon without(const std::vector<std::u32string>& exclusions) const;

  // `term<TAB>source<TAB>note` with a header comment.
  std::string to_tsv() const;

 private:
  std::vector<HateTerm> terms_;
  std::unordered_map<std::u32string, std::size_t> index_;
};

struct LoadResult {
  Lexicon lexicon;
  std::size_t duplicate_lines = 0;
};

// Parses `term<TAB>source<TAB>note` (source and note optional). Terms are
// normalized; an empty source column falls back to `source_tag`.
// Throws Error(EmptyLexicon) when nothing survives.
LoadResult parse_lexicon(std::string_view tsv, std::string_view source_tag, const encoding::Normalizer& normalizer);
LoadResult load_lexicon(const std::filesystem::path& path, std::string_view source_tag,
                        const encoding::Normalizer& normalizer);

struct MergeReport {
  std::vector<std::u32string> exact_duplicates;
  std::vector<std::pair<std::u32string, std::u32string>> containments;  // (shorter, longer)
  std::size_t size_a = 0;
  std::size_t size_b = 0;
  std::size_t total_terms = 0;

  Json to_json() const;
};

// Union keeping a's metadata on exact duplicates; containments among the
// merged terms are reported, never removed.
std::pair<Lexicon, MergeReport> merge_lexicons(const Lexicon& a, const Lexicon& b);

}  // namespace hatelab::lexicon
