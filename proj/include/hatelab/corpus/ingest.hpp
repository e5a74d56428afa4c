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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hatelab/corpus/post.hpp"
#include "hatelab/util/json.hpp"

namespace hatelab::corpus {

inline constexpr std::string_view kPostColumns[] = {"post_id",    "source_id", "source_name", "created_at",
                                                    "fetched_at", "text",      "url",         "interactions"};

struct SkippedRow {
  std::size_t row = 0;  // 1-based data row (header excluded)
  std::size_t line = 0;
  std::string reason;
};

struct IngestReport {
  std::size_t rows = 0;
  std::size_t accepted = 0;
  std::vector<SkippedRow> skipped;

  Json to_json() const;
};

struct IngestResult {
  std::vector<RawPost> posts;
  IngestReport report;
};

// Source of raw posts. Only the CSV export reader ships; a live platform
// client would implement the same interface.
class PostFetcher {
 public:
  virtual ~PostFetcher() = default;
  virtual IngestResult fetch() = 0;
};

class CsvFileFetcher : public PostFetcher {
 public:
  explicit CsvFileFetcher(std::filesystem::path path) : path_(std::move(path)) {}
  IngestResult fetch() override;

 private:
  std::filesystem::path path_;
};

// Columns are matched by header name, in any order; extra columns are
// ignored. Throws Error(HeaderMismatch) naming missing columns.
IngestResult ingest_csv(std::string_view data);

// Throws Error(FileUnreadable) or Error(HeaderMismatch).
IngestResult ingest(const std::filesystem::path& path);

std::string posts_to_csv(const std::vector<RawPost>& posts);

}  // namespace hatelab::corpus
