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

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace hatelab::corpus {

struct Timestamp {
  std::int64_t seconds = 0;  // since 1970-01-01T00:00:00Z
  std::int32_t nanos = 0;

  auto operator<=>(const Timestamp&) const = default;
};

// ISO-8601: `YYYY-MM-DD`, optionally `[T ]hh:mm[:ss[.fff...]]` and a `Z` or
// `+hh:mm`/`-hh:mm` offset (no offset means UTC). Returns nullopt on any
// malformed or out-of-range component.
std::optional<Timestamp> parse_timestamp(std::string_view text);

// `YYYY-MM-DDThh:mm:ssZ`, with a fractional part only when nanos != 0.
std::string format_timestamp(const Timestamp& ts);

}  // namespace hatelab::corpus
