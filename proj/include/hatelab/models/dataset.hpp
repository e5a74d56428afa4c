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
#include <cstdint>
#include <string>
#include <vector>

namespace hatelab::models {

struct Example {
  std::string id;
  std::vector<std::u32string> tokens;
  bool hate = false;
};

struct Dataset {
  std::vector<Example> examples;

  std::size_t size() const noexcept { return examples.size(); }
  // {not-hate, hate}
  std::array<std::size_t, 2> class_counts() const;
  // Throws Error(InvalidArgument) on duplicate ids.
  void check_unique_ids() const;
  Dataset subset(const std::vector<std::size_t>& indices) const;
};

// Duplicates minority examples, drawn with replacement, until both classes
// have the majority count. Originals keep their positions; copies are
// appended. Throws Error(SingleClass).
Dataset random_oversample(const Dataset& train, std::uint64_t seed);

}  // namespace hatelab::models
