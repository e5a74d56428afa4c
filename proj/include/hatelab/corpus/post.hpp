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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hatelab/corpus/timestamp.hpp"
#include "hatelab/lexicon/matcher.hpp"
#include "hatelab/util/json.hpp"

namespace hatelab::corpus {

struct RawPost {
  std::string post_id;
  std::string source_id;
  std::string source_name;
  std::optional<Timestamp> created_at;
  std::optional<Timestamp> fetched_at;
  std::string created_at_text;  // as read, re-emitted verbatim
  std::string fetched_at_text;
  std::string text;
  std::string url;
  std::int64_t interactions = 0;
};

struct CleanPost {
  std::string post_id;
  std::string source_id;
  std::string url;
  std::u32string text;
  bool was_zawgyi = false;
  std::size_t syllable_count = 0;
  std::vector<std::u32string> tokens;
  std::vector<lexicon::TermHit> lexicon_hits;
};

Json to_json(const CleanPost& post);

// Hit terms are rebuilt from the stored term text and source.
CleanPost clean_post_from_json(const Json& j);

}  // namespace hatelab::corpus
