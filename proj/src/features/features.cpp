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

#include "hatelab/features/features.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_set>

#include "hatelab/segment/syllable.hpp"
#include "hatelab/text/utf8.hpp"
#include "hatelab/util/error.hpp"

namespace hatelab::features {

std::string_view to_string(Unit unit) {
  switch (unit) {
    case Unit::Word: return "word";
    case Unit::Char: return "char";
    case Unit::Syllable: return "syllable";
  }
  return "word";
}

Unit parse_unit(std::string_view text) {
  if (text == "word") return Unit::Word;
  if (text == "char") return Unit::Char;
  if (text == "syllable") return Unit::Syllable;
  throw Error(ErrorCode::InvalidArgument, "unknown n-gram unit '" + std::string(text) + "'");
}

namespace {

void join_grams(const std::vector<std::u32string>& parts, std::string_view prefix, int lo, int hi,
                std::vector<Ngram>& out) {
  const auto n = static_cast<int>(parts.size());
  for (int len = lo; len <= hi; ++len) {
    for (int i = 0; i + len <= n; ++i) {
      std::string key(prefix);
      for (int k = 0; k < len; ++k) {
        if (k) key.push_back(' ');
        key += text::encode_utf8(parts[static_cast<std::size_t>(i + k)]);
      }
      out.push_back(std::move(key));
    }
  }
}

}  // namespace

std::vector<Ngram> extract_ngrams(const std::vector<std::u32string>& tokens, const NgramSpec& spec) {
  if (spec.lo < 1 || spec.hi < spec.lo) throw Error(ErrorCode::InvalidArgument, "n-gram range must satisfy 1 <= lo <= hi");
  std::vector<Ngram> out;
  switch (spec.unit) {
    case Unit::Word:
      join_grams(tokens, "w:", spec.lo, spec.hi, out);
      break;
    case Unit::Syllable: {
      std::vector<std::u32string> syllables;
      for (const auto& t : tokens) {
        for (auto& s : segment::segment_syllables_unchecked(t)) syllables.push_back(std::move(s.text));
      }
      join_grams(syllables, "s:", spec.lo, spec.hi, out);
      break;
    }
    case Unit::Char:
      for (const auto& t : tokens) {
        const auto n = static_cast<int>(t.size());
        for (int len = spec.lo; len <= spec.hi; ++len) {
          for (int i = 0; i + len <= n; ++i) {
            out.push_back("c:" + text::encode_utf8(std::u32string_view(t).substr(static_cast<std::size_t>(i),
                                                                                  static_cast<std::size_t>(len))));
          }
        }
      }
      break;
  }
  return out;
}

std::vector<Ngram> FeatureConfig::extract(const std::vector<std::u32string>& tokens) const {
  std::vector<Ngram> out;
  for (const auto& spec : ngrams) {
    auto part = extract_ngrams(tokens, spec);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

Json FeatureConfig::to_json() const {
  Json j;
  j["ngrams"] = Json::array();
  for (const auto& s : ngrams) j["ngrams"].push_back({{"unit", to_string(s.unit)}, {"lo", s.lo}, {"hi", s.hi}});
  j["min_count"] = min_count;
  j["weighting"] = weighting == Weighting::Tf ? "tf" : "tfidf";
  return j;
}

FeatureConfig FeatureConfig::from_json(const Json& j) {
  FeatureConfig c;
  c.ngrams.clear();
  for (const auto& s : j.at("ngrams")) {
    c.ngrams.push_back({parse_unit(s.at("unit").get<std::string>()), s.at("lo").get<int>(), s.at("hi").get<int>()});
  }
  c.min_count = j.value("min_count", std::size_t{1});
  const auto w = j.value("weighting", std::string("tfidf"));
  if (w != "tf" && w != "tfidf") throw Error(ErrorCode::InvalidArgument, "unknown weighting '" + w + "'");
  c.weighting = w == "tf" ? Weighting::Tf : Weighting::TfIdf;
  return c;
}

std::uint64_t FeatureConfig::fingerprint() const { return stable_hash(to_json().dump()); }

double SparseVector::norm() const {
  double s = 0.0;
  for (double v : value) s += v * v;
  return std::sqrt(s);
}

void SparseVector::normalize() {
  const double n = norm();
  if (n == 0.0) return;
  for (double& v : value) v /= n;
}

double SparseVector::at(std::uint32_t i) const {
  auto it = std::lower_bound(index.begin(), index.end(), i);
  return it != index.end() && *it == i ? value[static_cast<std::size_t>(it - index.begin())] : 0.0;
}

double smoothed_idf(std::size_t documents, std::size_t df) {
  return std::log((1.0 + static_cast<double>(documents)) / (1.0 + static_cast<double>(df))) + 1.0;
}

Vocab Vocab::build(const std::vector<std::vector<std::u32string>>& docs, const FeatureConfig& config) {
  if (config.min_count == 0) throw Error(ErrorCode::InvalidArgument, "min_count must be >= 1");
  std::map<std::string, std::uint32_t> df;
  for (const auto& doc : docs) {
    auto grams = config.extract(doc);
    std::sort(grams.begin(), grams.end());
    grams.erase(std::unique(grams.begin(), grams.end()), grams.end());
    for (auto& g : grams) ++df[std::move(g)];
  }
  Vocab v;
  v.config_ = config;
  v.documents_ = docs.size();
  for (auto& [term, count] : df) {
    if (count < config.min_count) continue;
    v.terms_.push_back(term);
    v.df_.push_back(count);
  }
  if (v.terms_.empty()) throw Error(ErrorCode::EmptyVocab, "no n-gram reaches min_count " + std::to_string(config.min_count));
  v.idf_.reserve(v.df_.size());
  for (auto d : v.df_) v.idf_.push_back(smoothed_idf(v.documents_, d));
  v.index_terms();
  return v;
}

void Vocab::index_terms() {
  lookup_.clear();
  lookup_.reserve(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) lookup_.emplace(terms_[i], static_cast<std::uint32_t>(i));
}

long Vocab::lookup(std::string_view ngram) const {
  auto it = lookup_.find(std::string(ngram));
  return it == lookup_.end() ? -1 : static_cast<long>(it->second);
}

SparseVector Vocab::vectorize(const std::vector<std::u32string>& tokens) const {
  std::map<std::uint32_t, double> counts;
  for (const auto& g : config_.extract(tokens)) {
    auto it = lookup_.find(g);
    if (it != lookup_.end()) counts[it->second] += 1.0;
  }
  SparseVector v;
  v.index.reserve(counts.size());
  v.value.reserve(counts.size());
  for (const auto& [i, tf] : counts) {
    v.index.push_back(i);
    v.value.push_back(config_.weighting == Weighting::TfIdf ? tf * idf_[i] : tf);
  }
  v.normalize();
  return v;
}

Json Vocab::to_json() const {
  Json j;
  j["config"] = config_.to_json();
  j["documents"] = documents_;
  j["terms"] = terms_;
  j["df"] = df_;
  return j;
}

Vocab Vocab::from_json(const Json& j) {
  Vocab v;
  v.config_ = FeatureConfig::from_json(j.at("config"));
  v.documents_ = j.at("documents").get<std::size_t>();
  v.terms_ = j.at("terms").get<std::vector<std::string>>();
  v.df_ = j.at("df").get<std::vector<std::uint32_t>>();
  if (v.terms_.size() != v.df_.size()) throw Error(ErrorCode::FeatureConfigMismatch, "vocab terms/df length differ");
  for (auto d : v.df_) v.idf_.push_back(smoothed_idf(v.documents_, d));
  v.index_terms();
  return v;
}

SparseVector tfidf_vectorize(const std::vector<std::u32string>& tokens, const Vocab& vocab) {
  return vocab.vectorize(tokens);
}

std::uint64_t stable_hash(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

SparseVector hash_features(const std::vector<Ngram>& ngrams, std::uint64_t buckets) {
  if (buckets == 0 || buckets > (std::uint64_t{1} << 32)) {
    throw Error(ErrorCode::InvalidArgument, "buckets must be in [1, 2^32]");
  }
  std::map<std::uint32_t, double> counts;
  for (const auto& g : ngrams) counts[static_cast<std::uint32_t>(stable_hash(g) % buckets)] += 1.0;
  SparseVector v;
  for (const auto& [i, c] : counts) {
    v.index.push_back(i);
    v.value.push_back(c);
  }
  return v;
}

}  // namespace hatelab::features
