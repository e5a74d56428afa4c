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

#include "hatelab/encoding/detect.hpp"

#include <algorithm>

#include "hatelab/text/utf8.hpp"
#include "hatelab/util/error.hpp"
#include "hatelab/util/io.hpp"

namespace hatelab::encoding {

std::string_view to_string(EncodingLabel label) {
  switch (label) {
    case EncodingLabel::Zawgyi: return "zawgyi";
    case EncodingLabel::Unicode: return "unicode";
    case EncodingLabel::Neutral: return "neutral";
  }
  return "neutral";
}

MarkerSet MarkerSet::parse(std::string_view tsv) {
  MarkerSet set;
  int line_no = 0;
  for (const auto& raw : split_lines(tsv)) {
    ++line_no;
    const std::string_view line = raw;
    if (trim(line).empty() || line.starts_with('#')) continue;
    const auto cols = split(line, '\t');
    const std::string where = "marker line " + std::to_string(line_no);
    if (cols.size() != 2) throw Error(ErrorCode::RuleTableInvalid, where + ": expected kind<TAB>pattern");
    try {
      if (cols[0] == "zawgyi") set.zawgyi_.push_back(Pattern::compile(cols[1]));
      else if (cols[0] == "unicode") set.unicode_.push_back(Pattern::compile(cols[1]));
      else throw Error(ErrorCode::RuleTableInvalid, "unknown marker kind '" + cols[0] + "'");
    } catch (const Error& e) {
      throw Error(ErrorCode::RuleTableInvalid, where + ": " + e.what());
    }
  }
  return set;
}

MarkerSet MarkerSet::load(const std::filesystem::path& path) { return parse(read_file(path)); }

EncodingVerdict MarkerSet::detect(std::u32string_view text, double threshold) const {
  EncodingVerdict v;
  if (std::none_of(text.begin(), text.end(), text::is_myanmar)) return v;
  for (const auto& p : zawgyi_) v.zawgyi_marker_count += p.count(text);
  for (const auto& p : unicode_) v.unicode_marker_count += p.count(text);
  const std::size_t total = v.zawgyi_marker_count + v.unicode_marker_count;
  if (total == 0) return v;
  v.score = static_cast<double>(v.zawgyi_marker_count) / static_cast<double>(total);
  v.label = v.score > threshold ? EncodingLabel::Zawgyi : EncodingLabel::Unicode;
  return v;
}

}  // namespace hatelab::encoding
