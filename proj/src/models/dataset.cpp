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

#include "hatelab/models/dataset.hpp"

#include <unordered_set>

#include "hatelab/util/error.hpp"
#include "hatelab/util/random.hpp"

namespace hatelab::models {

std::array<std::size_t, 2> Dataset::class_counts() const {
  std::array<std::size_t, 2> c{0, 0};
  for (const auto& e : examples) ++c[e.hate ? 1 : 0];
  return c;
}

void Dataset::check_unique_ids() const {
  std::unordered_set<std::string> seen;
  for (const auto& e : examples) {
    if (!seen.insert(e.id).second) throw Error(ErrorCode::InvalidArgument, "duplicate example id " + e.id);
  }
}

Dataset Dataset::subset(const std::vector<std::size_t>& indices) const {
  Dataset out;
  out.examples.reserve(indices.size());
  for (std::size_t i : indices) out.examples.push_back(examples.at(i));
  return out;
}

Dataset random_oversample(const Dataset& train, std::uint64_t seed) {
  const auto counts = train.class_counts();
  if (counts[0] == 0 || counts[1] == 0) throw Error(ErrorCode::SingleClass, "oversampling needs both classes");
  const bool minority_hate = counts[1] < counts[0];
  std::vector<std::size_t> minority;
  for (std::size_t i = 0; i < train.size(); ++i) {
    if (train.examples[i].hate == minority_hate) minority.push_back(i);
  }
  Dataset out = train;
  const std::size_t deficit = (minority_hate ? counts[0] - counts[1] : counts[1] - counts[0]);
  Rng rng(seed);
  out.examples.reserve(train.size() + deficit);
  for (std::size_t k = 0; k < deficit; ++k) out.examples.push_back(train.examples[minority[rng.below(minority.size())]]);
  return out;
}

}  // namespace hatelab::models
