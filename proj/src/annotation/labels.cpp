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

#include "hatelab/annotation/labels.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <utility>

#include "hatelab/corpus/csv.hpp"
#include "hatelab/corpus/timestamp.hpp"
#include "hatelab/util/error.hpp"
#include "hatelab/util/io.hpp"

namespace hatelab::annotation {

std::string_view to_string(Decision d) { return d == Decision::Yes ? "Yes" : "No"; }

std::optional<Decision> parse_decision(std::string_view text) {
  std::string lower;
  for (char c : trim(text)) lower.push_back(static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c));
  if (lower == "yes") return Decision::Yes;
  if (lower == "no") return Decision::No;
  return std::nullopt;
}

CharacteristicSet::CharacteristicSet(std::vector<std::string> names) : names_(std::move(names)) {
  lookup_.insert(names_.begin(), names_.end());
}

CharacteristicSet CharacteristicSet::load(const std::filesystem::path& path) {
  std::vector<std::string> names;
  for (const auto& line : split_lines(read_file(path))) {
    const auto name = trim(line);
    if (name.empty() || name.front() == '#') continue;
    if (std::find(names.begin(), names.end(), name) == names.end()) names.emplace_back(name);
  }
  return CharacteristicSet(std::move(names));
}

const CharacteristicSet& CharacteristicSet::shipped() {
  static const CharacteristicSet set = load(data_dir() / "protected_characteristics.txt");
  return set;
}

bool CharacteristicSet::contains(std::string_view name) const { return lookup_.contains(std::string(name)); }

std::string label_problem(const LabelRecord& r, const CharacteristicSet& allowed) {
  if (r.post_id.empty()) return "empty post_id";
  if (r.annotator_id.empty()) return "empty annotator_id";
  if (r.round < 0) return "round must be >= 0";
  for (const auto& c : r.characteristics) {
    if (!allowed.contains(c)) return "unknown characteristic '" + c + "'";
  }
  if (r.decision == Decision::Yes && r.characteristics.empty()) return "decision Yes requires at least one characteristic";
  if (r.decision == Decision::No && !r.characteristics.empty()) return "decision No must not carry characteristics";
  return {};
}

std::vector<LabelRecord> parse_labels_csv(std::string_view data) {
  corpus::CsvReader reader(data);
  corpus::CsvRecord header;
  if (!reader.next(header)) throw Error(ErrorCode::HeaderMismatch, "empty labels file");
  std::vector<std::size_t> col;
  std::string missing;
  for (auto name : kLabelColumns) {
    auto it = std::find_if(header.fields.begin(), header.fields.end(), [&](const std::string& f) { return trim(f) == name; });
    if (it == header.fields.end()) {
      if (!missing.empty()) missing += ", ";
      missing += name;
    } else {
      col.push_back(static_cast<std::size_t>(it - header.fields.begin()));
    }
  }
  if (!missing.empty()) throw Error(ErrorCode::HeaderMismatch, "labels file missing columns: " + missing);

  std::vector<LabelRecord> out;
  corpus::CsvRecord rec;
  while (reader.next(rec)) {
    if (rec.fields.size() == 1 && rec.fields[0].empty()) continue;
    auto fail = [&](const std::string& why) {
      throw Error(ErrorCode::ParseError, "labels line " + std::to_string(rec.line) + ": " + why);
    };
    if (reader.last_malformed()) fail("unterminated quoted field");
    if (rec.fields.size() != header.fields.size()) fail("wrong field count");
    LabelRecord r;
    r.post_id = std::string(trim(rec.fields[col[0]]));
    r.annotator_id = std::string(trim(rec.fields[col[1]]));
    const auto round = trim(rec.fields[col[2]]);
    const auto [ptr, ec] = std::from_chars(round.data(), round.data() + round.size(), r.round);
    if (round.empty() || ec != std::errc() || ptr != round.data() + round.size() || r.round < 0) fail("bad round");
    const auto decision = parse_decision(rec.fields[col[3]]);
    if (!decision) fail("bad decision '" + rec.fields[col[3]] + "'");
    r.decision = *decision;
    for (const auto& c : split(rec.fields[col[4]], ';')) {
      const auto name = trim(c);
      if (!name.empty()) r.characteristics.emplace_back(name);
    }
    r.timestamp = std::string(trim(rec.fields[col[5]]));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<LabelRecord> read_labels_csv(const std::filesystem::path& path) { return parse_labels_csv(read_file(path)); }

std::string labels_to_csv(const std::vector<LabelRecord>& records) {
  std::string out = corpus::csv_row({std::begin(kLabelColumns), std::end(kLabelColumns)});
  for (const auto& r : records) {
    std::string chars;
    for (std::size_t i = 0; i < r.characteristics.size(); ++i) {
      if (i) chars += ';';
      chars += r.characteristics[i];
    }
    out += corpus::csv_row(
        {r.post_id, r.annotator_id, std::to_string(r.round), std::string(to_string(r.decision)), chars, r.timestamp});
  }
  return out;
}

Json to_json(const LabelRecord& r) {
  return Json{{"post_id", r.post_id},     {"annotator_id", r.annotator_id},
              {"round", r.round},         {"decision", to_string(r.decision)},
              {"characteristics", r.characteristics}, {"timestamp", r.timestamp}};
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
  return corpus::format_timestamp({static_cast<std::int64_t>(secs), 0});
}

namespace {

std::string key_of(std::string_view post_id, std::string_view annotator_id) {
  std::string key(post_id);
  key.push_back('\x1f');
  key += annotator_id;
  return key;
}

}  // namespace

LabelStore::LabelStore(std::filesystem::path path) : path_(std::move(path)) {
  std::error_code ec;
  if (!std::filesystem::exists(*path_, ec)) return;
  for (auto& r : read_labels_csv(*path_)) {
    const auto key = key_of(r.post_id, r.annotator_id);
    auto it = index_.find(key);
    if (it == index_.end()) {
      index_.emplace(key, records_.size());
      records_.push_back(std::move(r));
    } else {
      records_[it->second] = std::move(r);
    }
  }
}

AuditEntry LabelStore::upsert(LabelRecord record) {
  std::unique_lock lock(mutex_);
  if (record.timestamp.empty()) record.timestamp = utc_now();
  AuditEntry entry;
  entry.timestamp = record.timestamp;
  entry.post_id = record.post_id;
  entry.annotator_id = record.annotator_id;
  entry.decision = record.decision;
  const auto key = key_of(record.post_id, record.annotator_id);
  auto it = index_.find(key);
  if (it == index_.end()) {
    entry.action = "create";
    index_.emplace(key, records_.size());
    records_.push_back(std::move(record));
    try {
      persist_locked();
    } catch (...) {
      records_.pop_back();
      index_.erase(key);
      throw;
    }
  } else {
    entry.action = "overwrite";
    entry.previous = records_[it->second].decision;
    LabelRecord old = std::exchange(records_[it->second], std::move(record));
    try {
      persist_locked();
    } catch (...) {
      records_[it->second] = std::move(old);
      throw;
    }
  }
  audit_.push_back(entry);
  return entry;
}

void LabelStore::persist_locked() const {
  if (path_) write_file_atomic(*path_, labels_to_csv(records_));
}

std::vector<LabelRecord> LabelStore::snapshot() const {
  std::shared_lock lock(mutex_);
  return records_;
}

std::optional<LabelRecord> LabelStore::find(std::string_view post_id, std::string_view annotator_id) const {
  std::shared_lock lock(mutex_);
  auto it = index_.find(key_of(post_id, annotator_id));
  if (it == index_.end()) return std::nullopt;
  return records_[it->second];
}

std::vector<AuditEntry> LabelStore::audit_log() const {
  std::shared_lock lock(mutex_);
  return audit_;
}

void LabelStore::read(const std::function<void(const std::vector<LabelRecord>&)>& fn) const {
  std::shared_lock lock(mutex_);
  fn(records_);
}

}  // namespace hatelab::annotation
