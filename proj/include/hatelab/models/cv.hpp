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
#include <utility>
#include <vector>

#include "hatelab/models/dataset.hpp"
#include "hatelab/models/metrics.hpp"
#include "hatelab/models/model.hpp"
#include "hatelab/util/json.hpp"

namespace hatelab::models {

// fold[i] in [0, k) for every example. Each class is shuffled and dealt
// round-robin, so per-fold class counts differ by at most one. Throws
// Error(TooFewMinority) when a class has fewer than k examples and
// Error(InvalidArgument) when k < 2.
std::vector<std::size_t> stratified_folds(const Dataset& data, std::size_t k, std::uint64_t seed);

struct CvResult {
  EvalReport report;  // pooled over test folds; report.folds holds each fold
  std::vector<std::size_t> fold_of;
  std::vector<std::pair<std::string, Prediction>> predictions;  // dataset order
  std::vector<std::vector<features::Ngram>> fold_vocab;  // SVM / BRF only

  double fold_mean_macro_f1() const;
  Json to_json() const;
};

// Every fold trains on the remaining folds (vocabulary, idf and oversampling
// come from the training part only) and predicts its own examples.
CvResult cross_validate(const Dataset& data, const ModelSpec& spec, std::size_t k, std::uint64_t seed,
                        bool oversample);

struct GridResult {
  std::vector<ModelSpec> grid;
  std::vector<EvalReport> reports;
  std::size_t best = 0;  // max macro-F1, earliest on ties

  const ModelSpec& best_spec() const { return grid.at(best); }
  Json to_json() const;
};

// Throws Error(InvalidArgument) on an empty grid.
GridResult grid_search(const Dataset& data, const std::vector<ModelSpec>& grid, std::size_t k, std::uint64_t seed,
                       bool oversample);

// Feature grid {word 1, word 1-2, char 2-5} x min_count {1, 2, 5} over `base`.
// FastText has no vocabulary, so its grid is `base` alone.
std::vector<ModelSpec> default_grid(const ModelSpec& base);

struct TrainTestSplit {
  Dataset train;
  Dataset test;
};

// Stratified hold-out split; each class contributes round(count * test_fraction)
// examples (at least one) to the test part.
TrainTestSplit stratified_split(const Dataset& data, double test_fraction, std::uint64_t seed);

}  // namespace hatelab::models
