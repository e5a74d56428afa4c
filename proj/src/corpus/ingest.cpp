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

#include "hatelab/corpus/ingest.hpp"

#include <array>
#include <charconv>

#include "hatelab/corpus/csv.hpp"
#include "hatelab/util/error.hpp"
#include "hatelab/util/io.hpp"

namespace hatelab::corpus {

Json IngestReport::to_json() const {
  Json j;
  j["rows"] = rows;
  j["accepted"] = accepted;
  j["skipped_count"] = skipped.size();
  j["skipped"] = Json::array();
  for (const auto& s : skipped) j["skipped"].push_back({{"row", s.row}, {"line", s.line}, {"reason", s.reason}});
  return j;
}

IngestResult CsvFileFetcher::fetch() { return ingest(path_); }

namespace {

constexpr std::size_t kColumnCount = std::size(kPostColumns);

std::string row_problem(const std::vector<std::string>& f, const std::array<std::size_t, kColumnCount>& col,
                        std::size_t width, RawPost& post) {
  if (f.size() != width) {
    return "expected " + std::to_string(width) + " fields, found " + std::to_string(f.size());
  }
  auto get = [&](std::size_t k) -> const std::string& { return f[col[k]]; };
  post.post_id = std::string(trim(get(0)));
  if (post.post_id.empty()) return "missing post_id";
  post.source_id = std::string(trim(get(1)));
  post.source_name = get(2);
  post.created_at_text = std::string(trim(get(3)));
  post.fetched_at_text = std::string(trim(get(4)));
  if (!post.created_at_text.empty()) {
    post.created_at = parse_timestamp(post.created_at_text);
    if (!post.created_at) return "bad created_at '" + post.created_at_text + "'";
  }
  if (!post.fetched_at_text.empty()) {
    post.fetched_at = parse_timestamp(post.fetched_at_text);
    if (!post.fetched_at) return "bad fetched_at '" + post.fetched_at_text + "'";
  }
  if (post.created_at && post.fetched_at && *post.fetched_at < *post.created_at) return "fetched_at before created_at";
  post.text = get(5);
  post.url = std::string(trim(get(6)));
  const auto inter = trim(get(7));
  post.interactions = 0;
  if (!inter.empty()) {
    const auto [ptr, ec] = std::from_chars(inter.data(), inter.data() + inter.size(), post.interactions);
    if (ec != std::errc() || ptr != inter.data() + inter.size() || post.interactions < 0) {
      return "bad interactions '" + std::string(inter) + "'";
    }
  }
  return {};
}

}  // namespace

IngestResult ingest_csv(std::string_view data) {
  CsvReader reader(data);
  CsvRecord header;
  if (!reader.next(header)) throw Error(ErrorCode::HeaderMismatch, "empty input; missing all columns");
  std::array<std::size_t, kColumnCount> col{};
  std::string missing;
  for (std::size_t k = 0; k < kColumnCount; ++k) {
    bool found = false;
    for (std::size_t i = 0; i < header.fields.size(); ++i) {
      if (trim(header.fields[i]) == kPostColumns[k]) {
        col[k] = i;
        found = true;
        break;
      }
    }
    if (!found) {
      if (!missing.empty()) missing += ", ";
      missing += kPostColumns[k];
    }
  }
  if (!missing.empty()) throw Error(ErrorCode::HeaderMismatch, "missing columns: " + missing);

  IngestResult result;
  CsvRecord record;
  std::size_t row = 0;
  while (reader.next(record)) {
    if (record.fields.size() == 1 && record.fields[0].empty()) continue;  // blank line
    ++row;
    RawPost post;
    std::string problem = reader.last_malformed() ? "unterminated quoted field"
                                                  : row_problem(record.fields, col, header.fields.size(), post);
    if (problem.empty()) {
      result.posts.push_back(std::move(post));
    } else {
      result.report.skipped.push_back({row, record.line, std::move(problem)});
    }
  }
  result.report.rows = row;
  result.report.accepted = result.posts.size();
  return result;
}

IngestResult ingest(const std::filesystem::path& path) { return ingest_csv(read_file(path)); }

std::string posts_to_csv(const std::vector<RawPost>& posts) {
  std::vector<std::string> header(std::begin(kPostColumns), std::end(kPostColumns));
  std::string out = csv_row(header);
  for (const auto& p : posts) {
    out += csv_row({p.post_id, p.source_id, p.source_name, p.created_at_text, p.fetched_at_text, p.text, p.url,
                    std::to_string(p.interactions)});
  }
  return out;
}

}  // namespace hatelab::corpus
