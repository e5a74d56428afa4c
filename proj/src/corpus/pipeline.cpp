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

#include "hatelab/corpus/pipeline.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "hatelab/segment/syllable.hpp"
#include "hatelab/text/utf8.hpp"
#include "hatelab/util/error.hpp"
#include "hatelab/util/io.hpp"
#include "hatelab/util/random.hpp"

namespace hatelab::corpus {

namespace {

bool looks_like_url(std::string_view token) {
  const auto scheme = token.find("://");
  if (scheme != std::string_view::npos && scheme > 0 && scheme + 3 < token.size()) {
    return std::all_of(token.begin(), token.begin() + static_cast<std::ptrdiff_t>(scheme), [](char c) {
      return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '+' || c == '-' ||
             c == '.';
    });
  }
  return token.size() > 4 && (token.substr(0, 4) == "www." || token.substr(0, 4) == "WWW.");
}

}  // namespace

bool is_non_text(std::string_view text) {
  const auto cps = text::decode_utf8(text);
  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && text::is_whitespace(cps[i])) ++i;
    if (i >= cps.size()) break;
    const std::size_t start = i;
    while (i < cps.size() && !text::is_whitespace(cps[i])) ++i;
    if (!looks_like_url(text::encode_utf8(std::u32string_view(cps).substr(start, i - start)))) return false;
  }
  return true;
}

std::vector<RawPost> drop_non_text(std::vector<RawPost> posts) {
  std::erase_if(posts, [](const RawPost& p) { return is_non_text(p.text); });
  return posts;
}

std::vector<RawPost> dedup_latest(const std::vector<RawPost>& posts) {
  std::unordered_map<std::string, std::size_t> best;  // id -> index into posts
  std::vector<std::string> order;
  for (std::size_t i = 0; i < posts.size(); ++i) {
    auto [it, inserted] = best.try_emplace(posts[i].post_id, i);
    if (inserted) {
      order.push_back(posts[i].post_id);
      continue;
    }
    const auto& kept = posts[it->second];
    if (!(posts[i].fetched_at < kept.fetched_at)) it->second = i;
  }
  std::vector<RawPost> out;
  out.reserve(order.size());
  for (const auto& id : order) out.push_back(posts[best.at(id)]);
  return out;
}

std::vector<std::size_t> constrained_order(const std::vector<std::string>& sources, std::uint64_t seed,
                                           std::size_t* remaining_adjacencies) {
  const std::size_t n = sources.size();
  std::vector<std::size_t> shuffled(n);
  for (std::size_t i = 0; i < n; ++i) shuffled[i] = i;
  Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(shuffled));

  // Per-source queues of positions in shuffled order.
  std::unordered_map<std::string, std::size_t> source_ids;
  std::vector<std::vector<std::size_t>> queues;
  for (std::size_t pos = 0; pos < n; ++pos) {
    auto [it, inserted] = source_ids.try_emplace(sources[shuffled[pos]], queues.size());
    if (inserted) queues.emplace_back();
    queues[it->second].push_back(pos);
  }
  const std::size_t k = queues.size();
  std::vector<std::size_t> head(k, 0);
  std::set<std::pair<std::size_t, std::size_t>> fronts;             // (front position, source)
  std::set<std::pair<std::size_t, std::size_t>, std::greater<>> by_count;  // (remaining, source)
  for (std::size_t s = 0; s < k; ++s) {
    fronts.emplace(queues[s][0], s);
    by_count.emplace(queues[s].size(), s);
  }

  std::vector<std::size_t> order;
  order.reserve(n);
  std::size_t adjacencies = 0;
  std::size_t prev = k;  // none
  for (std::size_t remaining = n; remaining > 0; --remaining) {
    const auto [top_count, top_source] = *by_count.begin();
    std::size_t pick = k;
    if (top_source != prev && 2 * top_count >= remaining + 1) {
      pick = top_source;  // forced: the largest source must take every other slot
    } else {
      for (const auto& [pos, s] : fronts) {
        if (s != prev) {
          pick = s;
          break;
        }
      }
      if (pick == k) pick = prev;
    }
    if (pick == prev) ++adjacencies;
    const std::size_t left = queues[pick].size() - head[pick];
    fronts.erase({queues[pick][head[pick]], pick});
    by_count.erase({left, pick});
    order.push_back(shuffled[queues[pick][head[pick]]]);
    ++head[pick];
    if (left > 1) {
      fronts.emplace(queues[pick][head[pick]], pick);
      by_count.emplace(left - 1, pick);
    }
    prev = pick;
  }
  if (remaining_adjacencies) *remaining_adjacencies = adjacencies;
  return order;
}

TextResources TextResources::load(const std::filesystem::path& dir) {
  TextResources r;
  r.normalizer = std::make_shared<const encoding::Normalizer>(encoding::Normalizer::load(dir));
  r.dictionary = segment::Dictionary::load(dir / "myanmar_dictionary.txt", *r.normalizer);
  r.stoplist = segment::load_stoplist(dir / "stopwords.txt", *r.normalizer);
  r.emoji = segment::EmojiRanges::load(dir / "emoji_ranges.tsv");
  return r;
}

const TextResources& TextResources::shipped() {
  static const TextResources resources = [] {
    TextResources r;
    r.normalizer = std::shared_ptr<const encoding::Normalizer>(&encoding::Normalizer::shipped(),
                                                               [](const encoding::Normalizer*) {});
    const auto dir = data_dir();
    r.dictionary = segment::Dictionary::load(dir / "myanmar_dictionary.txt", *r.normalizer);
    r.stoplist = segment::load_stoplist(dir / "stopwords.txt", *r.normalizer);
    r.emoji = segment::EmojiRanges::shipped();
    return r;
  }();
  return resources;
}

std::vector<std::u32string> tokenize(std::u32string_view normalized_text, const TextResources& resources) {
  const auto syllables = segment::segment_syllables_unchecked(normalized_text);
  const auto words = segment::remove_stopwords(segment::segment_words(syllables, resources.dictionary),
                                               resources.stoplist);
  std::vector<std::u32string> out;
  for (const auto& w : words) {
    if (w.in_dictionary || syllables[w.first].kind == segment::SyllableKind::Myanmar) {
      out.push_back(w.text);
      continue;
    }
    std::size_t i = 0;
    while (i < w.text.size()) {
      while (i < w.text.size() && text::is_whitespace(w.text[i])) ++i;
      const std::size_t start = i;
      while (i < w.text.size() && !text::is_whitespace(w.text[i])) ++i;
      if (i > start) {
        std::u32string piece = w.text.substr(start, i - start);
        if (!resources.stoplist.contains(piece)) out.push_back(std::move(piece));
      }
    }
  }
  return out;
}

Json CleanConfig::to_json() const {
  return Json{{"min_syllables", min_syllables},
              {"ratio_threshold", ratio_threshold},
              {"detection_threshold", detection_threshold},
              {"seed", seed}};
}

Json PipelineReport::to_json() const {
  Json j;
  j["seed"] = seed;
  j["steps"] = Json::array();
  for (const auto& s : steps) {
    j["steps"].push_back({{"name", s.name},
                          {"input_count", s.input_count},
                          {"output_count", s.output_count},
                          {"removed_count", s.removed_count}});
  }
  j["zawgyi_converted"] = zawgyi_converted;
  j["shuffle_adjacencies"] = shuffle_adjacencies;
  j["warnings"] = warnings;
  return j;
}

CleanResult clean_pipeline(const std::vector<RawPost>& posts, const lexicon::Matcher& matcher,
                           const CleanConfig& config, const TextResources& resources) {
  if (!(config.ratio_threshold >= 0.0 && config.ratio_threshold <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "ratio_threshold must lie in [0, 1]");
  }
  CleanResult result;
  auto& report = result.report;
  report.seed = config.seed;
  auto record = [&](std::string name, std::size_t in, std::size_t out) {
    report.steps.push_back({std::move(name), in, out, in - out});
  };

  auto kept = drop_non_text(posts);
  record("drop_non_text", posts.size(), kept.size());

  const std::size_t before_dedup = kept.size();
  kept = dedup_latest(kept);
  record("dedup_latest", before_dedup, kept.size());

  std::vector<CleanPost> work;
  work.reserve(kept.size());
  for (const auto& p : kept) {
    CleanPost c;
    c.post_id = p.post_id;
    c.source_id = p.source_id;
    c.url = p.url;
    auto normalized = resources.normalizer->normalize(text::decode_utf8(p.text), config.detection_threshold);
    c.text = std::move(normalized.text);
    c.was_zawgyi = normalized.was_zawgyi;
    if (c.was_zawgyi) ++report.zawgyi_converted;
    work.push_back(std::move(c));
  }
  record("normalize", kept.size(), work.size());

  for (auto& c : work) c.text = segment::strip_emoji(c.text, resources.emoji);
  record("strip_emoji", work.size(), work.size());

  std::size_t n = work.size();
  std::erase_if(work, [&](const CleanPost& c) { return segment::burmese_ratio(c.text) < config.ratio_threshold; });
  record("language_filter", n, work.size());

  n = work.size();
  for (auto& c : work) {
    c.syllable_count = segment::myanmar_syllable_count(
        segment::segment_syllables(c.text, resources.normalizer->markers()));
  }
  std::erase_if(work, [&](const CleanPost& c) { return c.syllable_count < config.min_syllables; });
  record("syllable_filter", n, work.size());

  auto shuffled = constrained_shuffle(work, config.seed);
  report.shuffle_adjacencies = shuffled.remaining_adjacencies;
  if (shuffled.remaining_adjacencies > 0) {
    report.warnings.push_back("constrained_shuffle: one source dominates; " +
                              std::to_string(shuffled.remaining_adjacencies) + " same-source adjacencies remain");
  }
  record("constrained_shuffle", work.size(), shuffled.posts.size());
  work = std::move(shuffled.posts);

  for (auto& c : work) {
    c.tokens = tokenize(c.text, resources);
    c.lexicon_hits = matcher.match(c.text, c.post_id);
  }
  record("tokenize_and_match", work.size(), work.size());

  if (work.empty()) report.warnings.push_back("final corpus is empty");
  result.posts = std::move(work);
  return result;
}

std::string corpus_to_jsonl(const std::vector<CleanPost>& posts) {
  std::string out;
  for (const auto& p : posts) {
    out += to_json(p).dump();
    out += '\n';
  }
  return out;
}

std::vector<CleanPost> corpus_from_jsonl(std::string_view data) {
  std::vector<CleanPost> out;
  std::size_t line_no = 0;
  for (const auto& line : split_lines(data)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      out.push_back(clean_post_from_json(Json::parse(line)));
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::ParseError, "corpus line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

void write_corpus(const std::filesystem::path& path, const std::vector<CleanPost>& posts) {
  write_file_atomic(path, corpus_to_jsonl(posts));
}

std::vector<CleanPost> read_corpus(const std::filesystem::path& path) { return corpus_from_jsonl(read_file(path)); }

}  // namespace hatelab::corpus
