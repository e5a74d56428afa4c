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
#include <string>
#include <string_view>
#include <vector>

namespace hatelab::corpus {

struct CsvRecord {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based line where the record starts
};

// RFC 4180 reader: quoted fields may hold separators, quotes ("") and newlines.
// An unterminated quote swallows the rest of the input into the last field;
// `malformed` is set on that record.
class CsvReader {
 public:
  explicit CsvReader(std::string_view data);

  // False at end of input.
  bool next(CsvRecord& record);
  bool last_malformed() const noexcept { return malformed_; }

 private:
  std::string_view data_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  bool malformed_ = false;
};

std::vector<CsvRecord> parse_csv(std::string_view data);

// Quotes a field when it contains a separator, quote, CR or LF.
std::string csv_escape(std::string_view field);
std::string csv_row(const std::vector<std::string>& fields);

}  // namespace hatelab::corpus
