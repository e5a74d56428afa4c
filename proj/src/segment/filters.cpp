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

#include "hatelab/segment/filters.hpp"

#include <algorithm>
#include <charconv>

#include "hatelab/encoding/normalize.hpp"
#include "hatelab/text/utf8.hpp"
#include "hatelab/util/error.hpp"
#include "hatelab/util/io.hpp"

namespace hatelab::segment {

StopList load_stoplist(const std::filesystem::path& path, const encoding::Normalizer& normalizer) {
  auto words = load_word_list(path, normalizer);
  return StopList(words.begin(), words.end());
}

std::vector<Token> remove_stopwords(const std::vector<Token>& tokens, const StopList& stoplist) {
  std::vector<Token> out;
  out.reserve(tokens.size());
  for (const auto& token : tokens) {
    if (!stoplist.contains(token.text)) out.push_back(token);
  }
  return out;
}

double burmese_ratio(std::u32string_view text) {
  std::size_t myanmar = 0;
  std::size_t visible = 0;
  for (char32_t cp : text) {
    if (text::is_whitespace(cp)) continue;
    ++visible;
    if (text::is_myanmar_script(cp)) ++myanmar;
  }
  return visible == 0 ? 0.0 : static_cast<double>(myanmar) / static_cast<double>(visible);
}

namespace {

char32_t parse_hex(std::string_view field, std::size_t line_no) {
  field = trim(field);
  std::uint32_t value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value, 16);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size() || value > 0x10FFFF) {
    throw Error(ErrorCode::ParseError, "emoji ranges line " + std::to_string(line_no) + ": bad codepoint '" +
                                           std::string(field) + "'");
  }
  return static_cast<char32_t>(value);
}

}  // namespace

EmojiRanges EmojiRanges::parse(std::string_view tsv) {
  EmojiRanges out;
  std::size_t line_no = 0;
  for (const auto& line : split_lines(tsv)) {
    ++line_no;
    if (trim(line).empty() || line.front() == '#') continue;
    const auto cols = split(line, '\t');
    if (cols.size() < 2) {
      throw Error(ErrorCode::ParseError, "emoji ranges line " + std::to_string(line_no) + ": expected two columns");
    }
    const char32_t lo = parse_hex(cols[0], line_no);
    const char32_t hi = parse_hex(cols[1], line_no);
    if (hi < lo) throw Error(ErrorCode::ParseError, "emoji ranges line " + std::to_string(line_no) + ": last < first");
    out.ranges_.emplace_back(lo, hi);
  }
  std::sort(out.ranges_.begin(), out.ranges_.end());
  std::vector<std::pair<char32_t, char32_t>> merged;
  for (const auto& r : out.ranges_) {
    if (!merged.empty() && r.first <= merged.back().second + 1) {
      merged.back().second = std::max(merged.back().second, r.second);
    } else {
      merged.push_back(r);
    }
  }
  out.ranges_ = std::move(merged);
  return out;
}

EmojiRanges EmojiRanges::load(const std::filesystem::path& path) { return parse(read_file(path)); }

const EmojiRanges& EmojiRanges::shipped() {
  static const EmojiRanges ranges = load(data_dir() / "emoji_ranges.tsv");
  return ranges;
}

bool EmojiRanges::contains(char32_t cp) const {
  auto it = std::upper_bound(ranges_.begin(), ranges_.end(), cp,
                             [](char32_t c, const auto& r) { return c < r.first; });
  if (it == ranges_.begin()) return false;
  --it;
  return cp <= it->second;
}

std::u32string strip_emoji(std::u32string_view text, const EmojiRanges& ranges) {
  std::u32string out;
  out.reserve(text.size());
  for (char32_t cp : text) {
    if (!ranges.contains(cp)) out.push_back(cp);
  }
  return out;
}

}  // namespace hatelab::segment
