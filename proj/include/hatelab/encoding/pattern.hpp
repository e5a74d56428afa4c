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

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hatelab::encoding {

inline constexpr std::size_t kMaxGroups = 9;

struct Match {
  std::size_t begin = 0;
  std::size_t end = 0;
  // groups[0] is the whole match; unset groups hold {npos, npos}.
  std::array<std::pair<std::size_t, std::size_t>, kMaxGroups + 1> groups{};

  std::u32string_view group(std::u32string_view text, std::size_t i) const;
};

// A small regular-expression dialect over codepoints, enough for script
// rewrite rules:
//   literals (UTF-8 or \uXXXX), '.', [classes] with ranges and ^ negation,
//   (groups) with '|' alternation, greedy ? * +, anchors ^ and $.
// Matching is leftmost, first-alternative-wins backtracking.
// Patterns that can match the empty string are rejected at compile time.
class Pattern {
 public:
  // Throws Error(RuleTableInvalid) describing the first syntax problem.
  static Pattern compile(std::string_view source);

  const std::string& source() const noexcept { return source_; }
  std::size_t group_count() const noexcept { return groups_; }

  // Anchored at `pos`.
  std::optional<Match> match_at(std::u32string_view text, std::size_t pos) const;

  // Leftmost match starting at or after `from`.
  std::optional<Match> search(std::u32string_view text, std::size_t from = 0) const;

  // Non-overlapping left-to-right occurrences.
  std::size_t count(std::u32string_view text) const;

  struct Range {
    char32_t lo, hi;
  };
  enum class Op { Char, Any, Class, Split, Jmp, Save, Bol, Eol, Match };
  struct Inst {
    Op op;
    char32_t ch = 0;
    int x = 0;  // Split: preferred target; Jmp: target; Save: slot; Class: class index
    int y = 0;  // Split: fallback target
  };
  struct CharClass {
    bool negated = false;
    std::vector<Range> ranges;
    bool contains(char32_t cp) const noexcept;
  };

 private:
  std::string source_;
  std::vector<Inst> program_;
  std::vector<CharClass> classes_;
  std::size_t groups_ = 0;

  friend class PatternCompiler;
};

// Replacement template: literals and $1..$9 references.
class Template {
 public:
  // Throws Error(RuleTableInvalid) if a reference exceeds `group_count`.
  static Template compile(std::string_view source, std::size_t group_count);

  void expand(std::u32string_view text, const Match& m, std::u32string& out) const;
  const std::string& source() const noexcept { return source_; }

 private:
  struct Piece {
    std::u32string literal;
    int group = -1;
  };
  std::string source_;
  std::vector<Piece> pieces_;
};

// Parses "\uXXXX" escapes and raw UTF-8 into codepoints; used by data-file loaders.
std::u32string unescape(std::string_view source);

}  // namespace hatelab::encoding
