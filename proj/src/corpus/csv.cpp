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

#include "hatelab/corpus/csv.hpp"

namespace hatelab::corpus {

CsvReader::CsvReader(std::string_view data) : data_(data) {
  if (data_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
}

bool CsvReader::next(CsvRecord& record) {
  record.fields.clear();
  malformed_ = false;
  if (pos_ >= data_.size()) return false;
  record.line = line_;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  while (pos_ < data_.size()) {
    const char c = data_[pos_];
    if (quoted) {
      ++pos_;
      if (c == '"') {
        if (pos_ < data_.size() && data_[pos_] == '"') {
          field.push_back('"');
          ++pos_;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line_;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && !field_started) {
      quoted = true;
      field_started = true;
      ++pos_;
    } else if (c == ',') {
      record.fields.push_back(std::move(field));
      field.clear();
      field_started = false;
      ++pos_;
    } else if (c == '\r' || c == '\n') {
      ++pos_;
      if (c == '\r' && pos_ < data_.size() && data_[pos_] == '\n') ++pos_;
      ++line_;
      record.fields.push_back(std::move(field));
      return true;
    } else {
      field.push_back(c);
      field_started = true;
      ++pos_;
    }
  }
  if (quoted) malformed_ = true;
  record.fields.push_back(std::move(field));
  return true;
}

std::vector<CsvRecord> parse_csv(std::string_view data) {
  std::vector<CsvRecord> out;
  CsvReader reader(data);
  CsvRecord record;
  while (reader.next(record)) out.push_back(record);
  return out;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(',');
    out += csv_escape(fields[i]);
  }
  out.push_back('\n');
  return out;
}

}  // namespace hatelab::corpus
