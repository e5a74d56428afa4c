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
#include <vector>

#include "hatelab/models/dataset.hpp"

namespace hatelab::models {

// Imbalanced corpus of Burmese-script pseudo-words in which hate posts tend to
// carry lexicon terms. Positives either contain a hate term ("archetypal") or
// only a target group plus hostile cue words; some negatives use hate terms
// benignly.
struct SyntheticConfig {
  std::size_t posts = 10000;
  double positive_rate = 0.04;
  std::uint64_t seed = 1;
  std::size_t vocabulary = 1500;
  std::size_t hate_terms = 40;
  std::size_t targets = 20;
  std::size_t cues = 30;
  std::size_t min_words = 6;
  std::size_t max_words = 16;
  double archetypal = 0.75;       // share of positives with a hate term
  double benign_hate_use = 0.05;  // share of negatives with a hate term
  double benign_target = 0.15;
  double benign_cue = 0.15;
};

struct SyntheticCorpus {
  Dataset data;  // ids "syn-000001", ...; exactly round(posts * positive_rate) positives
  std::vector<std::u32string> hate_terms;
  std::vector<std::u32string> targets;
  std::vector<std::u32string> cues;
  std::vector<std::u32string> general;
};

SyntheticCorpus make_synthetic_corpus(const SyntheticConfig& config);

}  // namespace hatelab::models
