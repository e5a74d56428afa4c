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
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hatelab/corpus/post.hpp"
#include "hatelab/encoding/normalize.hpp"
#include "hatelab/lexicon/matcher.hpp"
#include "hatelab/segment/filters.hpp"
#include "hatelab/segment/words.hpp"
#include "hatelab/util/json.hpp"

namespace hatelab::corpus {

// True for empty/whitespace text and text whose every whitespace-separated
// token looks like a URL (`scheme://...` or `www....`).
bool is_non_text(std::string_view text);

std::vector<RawPost> drop_non_text(std::vector<RawPost> posts);

// One post per post_id: the maximum fetched_at (a missing timestamp sorts
// first), later input position on ties. Output keeps first-seen id order.
std::vector<RawPost> dedup_latest(const std::vector<RawPost>& posts);

template <typename Post>
struct ShuffleResult {
  std::vector<Post> posts;
  std::size_t remaining_adjacencies = 0;  // nonzero only when no valid order exists
};

// Seeded Fisher-Yates shuffle, then a greedy pass that rebuilds the order
// position by position so no two neighbours share a source. The pass always
// keeps the remainder arrangeable, so it finds a valid order whenever the
// largest source holds at most ceil(n/2) items.
std::vector<std::size_t> constrained_order(const std::vector<std::string>& sources, std::uint64_t seed,
                                           std::size_t* remaining_adjacencies = nullptr);

template <typename Post>
ShuffleResult<Post> constrained_shuffle(const std::vector<Post>& posts, std::uint64_t seed) {
  std::vector<std::string> sources;
  sources.reserve(posts.size());
  for (const auto& p : posts) sources.push_back(p.source_id);
  ShuffleResult<Post> out;
  for (std::size_t i : constrained_order(sources, seed, &out.remaining_adjacencies)) out.posts.push_back(posts[i]);
  return out;
}

// Normalizer, word list, stopwords and emoji table shared by the cleaning
// steps and by the review module's featurization.
struct TextResources {
  std::shared_ptr<const encoding::Normalizer> normalizer;
  segment::Dictionary dictionary;
  segment::StopList stoplist;
  segment::EmojiRanges emoji;

  static TextResources load(const std::filesystem::path& data_dir);
  static const TextResources& shipped();
};

// Syllables -> dictionary words; Other runs split on whitespace with blank
// pieces dropped; stopwords removed.
std::vector<std::u32string> tokenize(std::u32string_view normalized_text, const TextResources& resources);

struct CleanConfig {
  std::size_t min_syllables = 3;
  double ratio_threshold = 0.5;
  double detection_threshold = encoding::kDefaultDetectionThreshold;
  std::uint64_t seed = 0;

  Json to_json() const;
};

struct PipelineStep {
  std::string name;
  std::size_t input_count = 0;
  std::size_t output_count = 0;
  std::size_t removed_count = 0;
};

struct PipelineReport {
  std::vector<PipelineStep> steps;
  std::uint64_t seed = 0;
  std::size_t zawgyi_converted = 0;
  std::size_t shuffle_adjacencies = 0;
  std::vector<std::string> warnings;

  Json to_json() const;
};

struct CleanResult {
  std::vector<CleanPost> posts;
  PipelineReport report;
};

CleanResult clean_pipeline(const std::vector<RawPost>& posts, const lexicon::Matcher& matcher,
                           const CleanConfig& config, const TextResources& resources = TextResources::shipped());

// JSON Lines, one CleanPost per line.
std::string corpus_to_jsonl(const std::vector<CleanPost>& posts);
std::vector<CleanPost> corpus_from_jsonl(std::string_view data);
void write_corpus(const std::filesystem::path& path, const std::vector<CleanPost>& posts);
std::vector<CleanPost> read_corpus(const std::filesystem::path& path);

}  // namespace hatelab::corpus
