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

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hatelab/util/json.hpp"

namespace hatelab::models {

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
};

struct EvalReport {
  ClassMetrics hate;
  ClassMetrics not_hate;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  double accuracy = 0.0;
  // confusion[gold][pred], index 1 = hate
  std::array<std::array<std::size_t, 2>, 2> confusion{};
  std::size_t count = 0;
  std::vector<EvalReport> folds;

  Json to_json() const;
};

// From a confusion matrix; 0/0 is 0 for every ratio.
EvalReport report_from_confusion(const std::array<std::array<std::size_t, 2>, 2>& confusion);

// Aligns by id. Throws Error(IdMismatch) when the id sets differ or repeat.
EvalReport evaluate(const std::vector<std::pair<std::string, bool>>& predictions,
                    const std::vector<std::pair<std::string, bool>>& gold);

}  // namespace hatelab::models
