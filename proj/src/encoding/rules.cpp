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

#include "hatelab/encoding/rules.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "hatelab/util/error.hpp"
#include "hatelab/util/io.hpp"

namespace hatelab::encoding {

std::u32string RewriteRule::apply(std::u32string_view text) const {
  std::u32string out;
  out.reserve(text.size() + 8);
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto m = pattern.search(text, pos);
    if (!m) break;
    out.append(text.substr(pos, m->begin - pos));
    replacement.expand(text, *m, out);
    pos = m->end;
  }
  if (pos < text.size()) out.append(text.substr(pos));
  return out;
}

RuleTable RuleTable::parse(std::string_view tsv) {
  RuleTable table;
  std::set<int> seen;
  int line_no = 0;
  for (const auto& raw : split_lines(tsv)) {
    ++line_no;
    const std::string_view line = raw;
    if (trim(line).empty() || line.starts_with('#')) continue;
    const auto cols = split(line, '\t');
    const std::string where = "line " + std::to_string(line_no);
    if (cols.size() != 3) {
      throw Error(ErrorCode::RuleTableInvalid, where + ": expected 3 tab-separated columns");
    }
    int priority = 0;
    const std::string_view pr = trim(cols[0]);
    auto [ptr, ec] = std::from_chars(pr.data(), pr.data() + pr.size(), priority);
    if (ec != std::errc{} || ptr != pr.data() + pr.size()) {
      throw Error(ErrorCode::RuleTableInvalid, where + ": priority is not an integer");
    }
    if (!seen.insert(priority).second) {
      throw Error(ErrorCode::RuleTableInvalid, where + ": duplicate priority " + std::to_string(priority));
    }
    try {
      Pattern pattern = Pattern::compile(cols[1]);
      Template replacement = Template::compile(cols[2], pattern.group_count());
      table.rules_.push_back({priority, std::move(pattern), std::move(replacement)});
    } catch (const Error& e) {
      throw Error(ErrorCode::RuleTableInvalid, where + ": " + e.what());
    }
  }
  std::sort(table.rules_.begin(), table.rules_.end(),
            [](const RewriteRule& a, const RewriteRule& b) { return a.priority < b.priority; });
  return table;
}

RuleTable RuleTable::load(const std::filesystem::path& path) { return parse(read_file(path)); }

std::u32string RuleTable::apply(std::u32string_view text) const {
  std::u32string cur(text);
  for (const auto& rule : rules_) cur = rule.apply(cur);
  return cur;
}

}  // namespace hatelab::encoding
