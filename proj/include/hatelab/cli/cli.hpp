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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hatelab/annotation/assign.hpp"
#include "hatelab/corpus/pipeline.hpp"
#include "hatelab/models/model.hpp"
#include "hatelab/util/json.hpp"

namespace hatelab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// Settings shared by all subcommands. Loaded from the file named by
// HATELAB_CONFIG when set; command-line flags override individual fields.
struct RunConfig {
  struct Paths {
    std::string data_dir;  // rule tables, markers, emoji ranges; empty = shipped data
    std::string dictionary;
    std::string stopwords;
    std::string corpus;
    std::vector<std::string> lexicons;
    std::string labels;
    std::string models;
    std::string plan;
    std::string accounts;
    std::string characteristics;
  } paths;
  std::optional<std::uint64_t> seed;
  std::size_t min_syllables = 3;
  double ratio_threshold = 0.5;
  double detection_threshold = encoding::kDefaultDetectionThreshold;
  models::ModelSpec model;
  std::size_t cv = 0;  // 0 = no cross-validation
  bool oversample = false;
  bool grid = false;
  std::size_t batch_size = 100;
  std::size_t paired_rounds = 4;
  std::vector<std::string> annotators;

  Json to_json() const;
  static RunConfig from_json(const Json& j);  // throws Error(ParseError)
};

// Runs one `hatelab` invocation. Reports go to `out` (or --out / --report
// files), diagnostics to `err`. Returns kExitOk, kExitUsage or kExitData.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hatelab::cli
