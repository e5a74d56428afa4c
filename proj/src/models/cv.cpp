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

#include "hatelab/models/cv.hpp"

#include <cmath>
#include <numeric>

#include "hatelab/util/error.hpp"
#include "hatelab/util/random.hpp"

namespace hatelab::models {

namespace {

std::array<std::vector<std::size_t>, 2> shuffled_by_class(const Dataset& data, std::uint64_t seed) {
  std::array<std::vector<std::size_t>, 2> by_class;
  for (std::size_t i = 0; i < data.size(); ++i) by_class[data.examples[i].hate ? 1 : 0].push_back(i);
  for (std::size_t c = 0; c < 2; ++c) {
    Rng rng(derive_seed(seed, 0xf01d + c));
    rng.shuffle(std::span<std::size_t>(by_class[c]));
  }
  return by_class;
}

}  // namespace

std::vector<std::size_t> stratified_folds(const Dataset& data, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "cross-validation needs k >= 2");
  const auto counts = data.class_counts();
  const std::size_t minority = std::min(counts[0], counts[1]);
  if (minority < k) {
    throw Error(ErrorCode::TooFewMinority,
                "minority class has " + std::to_string(minority) + " examples, fewer than k = " + std::to_string(k));
  }
  const auto by_class = shuffled_by_class(data, seed);
  std::vector<std::size_t> fold(data.size());
  // The hate class continues the deal where the other class stopped so fold
  // sizes stay within one of each other.
  std::size_t next = 0;
  for (const auto& members : by_class) {
    for (std::size_t idx : members) {
      fold[idx] = next;
      next = (next + 1) % k;
    }
  }
  return fold;
}

double CvResult::fold_mean_macro_f1() const {
  if (report.folds.empty()) return 0.0;
  double s = 0.0;
  for (const auto& f : report.folds) s += f.macro_f1;
  return s / static_cast<double>(report.folds.size());
}

Json CvResult::to_json() const {
  Json j;
  j["pooled"] = report.to_json();
  j["fold_mean_macro_f1"] = fold_mean_macro_f1();
  return j;
}

CvResult cross_validate(const Dataset& data, const ModelSpec& spec, std::size_t k, std::uint64_t seed,
                        bool oversample) {
  data.check_unique_ids();
  CvResult result;
  result.fold_of = stratified_folds(data, k, seed);
  result.predictions.resize(data.size());
  if (spec.type != ModelType::FastText) result.fold_vocab.resize(k);

  std::array<std::array<std::size_t, 2>, 2> pooled{};
  for (std::size_t f = 0; f < k; ++f) {
    std::vector<std::size_t> train_idx, test_idx;
    for (std::size_t i = 0; i < data.size(); ++i) (result.fold_of[i] == f ? test_idx : train_idx).push_back(i);
    const ModelArtifact model = train_model(spec, data.subset(train_idx), derive_seed(seed, 100 + f), oversample);
    if (model.vocab) result.fold_vocab[f] = model.vocab->terms();

    std::array<std::array<std::size_t, 2>, 2> confusion{};
    for (std::size_t i : test_idx) {
      const auto& e = data.examples[i];
      const Prediction p = predict(model, e.tokens);
      result.predictions[i] = {e.id, p};
      ++confusion[e.hate ? 1 : 0][p.hate ? 1 : 0];
    }
    for (std::size_t g = 0; g < 2; ++g) {
      for (std::size_t q = 0; q < 2; ++q) pooled[g][q] += confusion[g][q];
    }
    result.report.folds.push_back(report_from_confusion(confusion));
  }
  auto folds = std::move(result.report.folds);
  result.report = report_from_confusion(pooled);
  result.report.folds = std::move(folds);
  return result;
}

Json GridResult::to_json() const {
  Json j;
  j["best"] = best;
  j["best_spec"] = grid.at(best).to_json();
  j["table"] = Json::array();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    j["table"].push_back({{"spec", grid[i].to_json()}, {"report", reports[i].to_json()}});
  }
  return j;
}

GridResult grid_search(const Dataset& data, const std::vector<ModelSpec>& grid, std::size_t k, std::uint64_t seed,
                       bool oversample) {
  if (grid.empty()) throw Error(ErrorCode::InvalidArgument, "grid search needs at least one grid point");
  GridResult r;
  r.grid = grid;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    r.reports.push_back(cross_validate(data, grid[i], k, seed, oversample).report);
    if (r.reports[i].macro_f1 > r.reports[r.best].macro_f1) r.best = i;
  }
  return r;
}

std::vector<ModelSpec> default_grid(const ModelSpec& base) {
  if (base.type == ModelType::FastText) return {base};
  using features::NgramSpec;
  using features::Unit;
  const std::vector<std::vector<NgramSpec>> feature_sets{
      {{Unit::Word, 1, 1}}, {{Unit::Word, 1, 2}}, {{Unit::Char, 2, 5}}};
  std::vector<ModelSpec> grid;
  for (const auto& ngrams : feature_sets) {
    for (std::size_t min_count : {1, 2, 5}) {
      ModelSpec s = base;
      s.features.ngrams = ngrams;
      s.features.min_count = min_count;
      grid.push_back(s);
    }
  }
  return grid;
}

TrainTestSplit stratified_split(const Dataset& data, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "test fraction must be in (0, 1)");
  }
  const auto by_class = shuffled_by_class(data, seed);
  std::vector<bool> in_test(data.size(), false);
  for (const auto& members : by_class) {
    if (members.empty()) continue;
    auto n = static_cast<std::size_t>(std::llround(static_cast<double>(members.size()) * test_fraction));
    n = std::clamp<std::size_t>(n, 1, members.size());
    for (std::size_t i = 0; i < n; ++i) in_test[members[i]] = true;
  }
  std::vector<std::size_t> train_idx, test_idx;
  for (std::size_t i = 0; i < data.size(); ++i) (in_test[i] ? test_idx : train_idx).push_back(i);
  return {data.subset(train_idx), data.subset(test_idx)};
}

}  // namespace hatelab::models
