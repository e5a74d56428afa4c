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
#include <vector>

#include "hatelab/encoding/pattern.hpp"

namespace hatelab::encoding {

struct RewriteRule {
  int priority = 0;
  Pattern pattern;
  Template replacement;

  // One left-to-right pass of non-overlapping replacements.
  std::u32string apply(std::u32string_view text) const;
};

// Ordered rewrite rules, loaded from a TSV file
// (`priority<TAB>pattern<TAB>replacement`, '#' comments, blank lines ignored).
class RuleTable {
 public:
  // Throws Error(RuleTableInvalid) on malformed lines, bad patterns,
  // unknown group references or duplicate priorities.
  static RuleTable parse(std::string_view tsv);
  static RuleTable load(const std::filesystem::path& path);

  // Every rule once, in ascending priority.
  std::u32string apply(std::u32string_view text) const;

  const std::vector<RewriteRule>& rules() const noexcept { return rules_; }

 private:
  std::vector<RewriteRule> rules_;
};

}  // namespace hatelab::encoding
