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

#include "hatelab/lexicon/lexicon.hpp"

#include <algorithm>
#include <unordered_set>

#include "hatelab/encoding/normalize.hpp"
#include "hatelab/lexicon/matcher.hpp"
#include "hatelab/text/utf8.hpp"
#include "hatelab/util/error.hpp"
#include "hatelab/util/io.hpp"

namespace hatelab::lexicon {

bool Lexicon::add(HateTerm term) {
  if (term.term.empty() || index_.contains(term.term)) return false;
  index_.emplace(term.term, terms_.size());
  terms_.push_back(std::move(term));
  return true;
}

bool Lexicon::contains(std::u32string_view term) const { return find(term) != nullptr; }

const HateTerm* Lexicon::find(std::u32string_view term) const {
  auto it = index_.find(std::u32string(term));
  return it == index_.end() ? nullptr : &terms_[it->second];
}

Lexicon Lexicon::without(const std::vector<std::u32string>& exclusions) const {
  const std::unordered_set<std::u32string> drop(exclusions.begin(), exclusions.end());
  Lexicon out;
  for (const auto& t : terms_) {
    if (!drop.contains(t.term)) out.add(t);
  }
  return out;
}

std::string Lexicon::to_tsv() const {
  std::string out = "# term\tsource\tnote\n";
  for (const auto& t : terms_) {
    out += text::encode_utf8(t.term);
    out += '\t';
    out += t.source;
    out += '\t';
    out += t.note;
    out += '\n';
  }
  return out;
}

LoadResult parse_lexicon(std::string_view tsv, std::string_view source_tag, const encoding::Normalizer& normalizer) {
  LoadResult result;
  for (const auto& line : split_lines(tsv)) {
    if (trim(line).empty() || line.front() == '#') continue;
    auto cols = split(line, '\t');
    const auto raw = trim(cols[0]);
    if (raw.empty()) continue;
    HateTerm term;
    term.term = normalizer.normalize(text::decode_utf8(raw)).text;
    term.source = cols.size() > 1 && !trim(cols[1]).empty() ? std::string(trim(cols[1])) : std::string(source_tag);
    term.note = cols.size() > 2 ? std::string(trim(cols[2])) : std::string();
    if (!result.lexicon.add(std::move(term))) ++result.duplicate_lines;
  }
  if (result.lexicon.size() == 0) throw Error(ErrorCode::EmptyLexicon, "no terms after normalization");
  return result;
}

LoadResult load_lexicon(const std::filesystem::path& path, std::string_view source_tag,
                        const encoding::Normalizer& normalizer) {
  try {
    return parse_lexicon(read_file(path), source_tag, normalizer);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::EmptyLexicon) throw Error(ErrorCode::EmptyLexicon, path.string() + ": no terms");
    throw;
  }
}

Json MergeReport::to_json() const {
  Json j;
  j["size_a"] = size_a;
  j["size_b"] = size_b;
  j["total_terms"] = total_terms;
  j["exact_duplicates"] = {{"count", exact_duplicates.size()}, {"terms", Json::array()}};
  for (const auto& t : exact_duplicates) j["exact_duplicates"]["terms"].push_back(text::encode_utf8(t));
  j["containments"] = {{"count", containments.size()}, {"pairs", Json::array()}};
  for (const auto& [shorter, longer] : containments) {
    j["containments"]["pairs"].push_back({{"shorter", text::encode_utf8(shorter)}, {"longer", text::encode_utf8(longer)}});
  }
  return j;
}

std::pair<Lexicon, MergeReport> merge_lexicons(const Lexicon& a, const Lexicon& b) {
  MergeReport report;
  report.size_a = a.size();
  report.size_b = b.size();
  Lexicon merged = a;
  for (const auto& t : b.terms()) {
    if (!merged.add(t)) report.exact_duplicates.push_back(t.term);
  }
  report.total_terms = merged.size();

  // Each term is scanned for every other term it contains.
  const Matcher matcher(merged);
  const auto& terms = merged.terms();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    std::vector<std::size_t> inside;
    for (const auto& [idx, start] : matcher.match_indices(terms[i].term)) {
      if (idx != i) inside.push_back(idx);
    }
    std::sort(inside.begin(), inside.end());
    inside.erase(std::unique(inside.begin(), inside.end()), inside.end());
    for (std::size_t idx : inside) report.containments.emplace_back(terms[idx].term, terms[i].term);
  }
  return {std::move(merged), std::move(report)};
}

}  // namespace hatelab::lexicon
