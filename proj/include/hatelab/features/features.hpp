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
#include <unordered_map>
#include <vector>

#include "hatelab/util/json.hpp"

namespace hatelab::features {

enum class Unit { Word, Char, Syllable };

std::string_view to_string(Unit unit);
Unit parse_unit(std::string_view text);  // throws Error(InvalidArgument)

struct NgramSpec {
  Unit unit = Unit::Word;
  int lo = 1;
  int hi = 1;

  bool operator==(const NgramSpec&) const = default;
};

// n-gram keys are UTF-8 with a unit prefix ("w:", "c:", "s:") so units never
// collide; word and syllable grams join their parts with a single space.
using Ngram = std::string;

// Tokens of a post. Char grams stay inside one token; syllable grams run over
// the concatenated syllables of all tokens. Throws Error(InvalidArgument)
// unless 1 <= lo <= hi.
std::vector<Ngram> extract_ngrams(const std::vector<std::u32string>& tokens, const NgramSpec& spec);

enum class Weighting { Tf, TfIdf };

struct FeatureConfig {
  std::vector<NgramSpec> ngrams{{Unit::Word, 1, 1}};
  std::size_t min_count = 1;  // minimum document frequency
  Weighting weighting = Weighting::TfIdf;

  bool operator==(const FeatureConfig&) const = default;

  std::vector<Ngram> extract(const std::vector<std::u32string>& tokens) const;
  Json to_json() const;
  static FeatureConfig from_json(const Json& j);
  std::uint64_t fingerprint() const;
};

struct SparseVector {
  std::vector<std::uint32_t> index;  // strictly ascending
  std::vector<double> value;

  std::size_t nnz() const noexcept { return index.size(); }
  double norm() const;
  void normalize();  // L2; the zero vector is left alone
  double at(std::uint32_t i) const;
};

class Vocab {
 public:
  // Terms are sorted bytewise so indices do not depend on document order.
  // Throws Error(EmptyVocab) when nothing reaches min_count.
  static Vocab build(const std::vector<std::vector<std::u32string>>& docs, const FeatureConfig& config);

  std::size_t size() const noexcept { return terms_.size(); }
  const std::vector<Ngram>& terms() const noexcept { return terms_; }
  const std::vector<std::uint32_t>& df() const noexcept { return df_; }
  const std::vector<double>& idf() const noexcept { return idf_; }
  std::size_t documents() const noexcept { return documents_; }
  const FeatureConfig& config() const noexcept { return config_; }
  long lookup(std::string_view ngram) const;  // -1 if absent

  // Raw counts x idf (or raw counts for Tf weighting), L2-normalized.
  // Out-of-vocabulary grams are ignored.
  SparseVector vectorize(const std::vector<std::u32string>& tokens) const;

  Json to_json() const;
  static Vocab from_json(const Json& j);

 private:
  void index_terms();

  FeatureConfig config_;
  std::vector<Ngram> terms_;
  std::vector<std::uint32_t> df_;
  std::vector<double> idf_;
  std::size_t documents_ = 0;
  std::unordered_map<std::string, std::uint32_t> lookup_;
};

// idf(t) = ln((1 + N) / (1 + df)) + 1
double smoothed_idf(std::size_t documents, std::size_t df);

SparseVector tfidf_vectorize(const std::vector<std::u32string>& tokens, const Vocab& vocab);

// 64-bit FNV-1a over the UTF-8 bytes.
std::uint64_t stable_hash(std::string_view bytes);

// Counts per bucket (stable_hash mod buckets); colliding grams add up.
// Throws Error(InvalidArgument) unless 1 <= buckets <= 2^32.
SparseVector hash_features(const std::vector<Ngram>& ngrams, std::uint64_t buckets);

}  // namespace hatelab::features
