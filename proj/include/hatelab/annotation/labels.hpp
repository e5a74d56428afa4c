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
#include <functional>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hatelab/util/json.hpp"

namespace hatelab::annotation {

enum class Decision { Yes, No };

std::string_view to_string(Decision d);
// Accepts Yes/No in any letter case; nullopt otherwise.
std::optional<Decision> parse_decision(std::string_view text);

// Annotator id reserved for facilitator rulings stored alongside labels.
inline constexpr std::string_view kAdjudicatedId = "adjudicated";

struct LabelRecord {
  std::string post_id;
  std::string annotator_id;
  int round = 0;  // 0 = solo phase
  Decision decision = Decision::No;
  std::vector<std::string> characteristics;
  std::string timestamp;

  bool operator==(const LabelRecord&) const = default;
};

class CharacteristicSet {
 public:
  explicit CharacteristicSet(std::vector<std::string> names);
  static CharacteristicSet load(const std::filesystem::path& path);
  static const CharacteristicSet& shipped();

  bool contains(std::string_view name) const;
  const std::vector<std::string>& names() const noexcept { return names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_set<std::string> lookup_;
};

// Empty string when valid, else the reason: unknown characteristic, Yes with
// no characteristics, No with characteristics, bad ids or round.
std::string label_problem(const LabelRecord& record, const CharacteristicSet& allowed);

inline constexpr std::string_view kLabelColumns[] = {"post_id", "annotator_id", "round",
                                                     "decision", "characteristics", "timestamp"};

// Throws Error(HeaderMismatch) or Error(ParseError) with the line number.
std::vector<LabelRecord> parse_labels_csv(std::string_view data);
std::vector<LabelRecord> read_labels_csv(const std::filesystem::path& path);
std::string labels_to_csv(const std::vector<LabelRecord>& records);

Json to_json(const LabelRecord& record);

struct AuditEntry {
  std::string timestamp;
  std::string post_id;
  std::string annotator_id;
  std::optional<Decision> previous;
  Decision decision = Decision::No;
  std::string action;  // "create" or "overwrite"
};

// The single mutation point for labels: last write wins per (post, annotator),
// every write is audited. With a backing path, each write rewrites the CSV by
// atomic replace before returning, so the file always equals the store.
class LabelStore {
 public:
  LabelStore() = default;
  explicit LabelStore(std::filesystem::path path);  // loads the file if it exists

  // Returns the audit entry of this write.
  AuditEntry upsert(LabelRecord record);

  std::vector<LabelRecord> snapshot() const;
  std::optional<LabelRecord> find(std::string_view post_id, std::string_view annotator_id) const;
  std::vector<AuditEntry> audit_log() const;

  // Runs `fn` on a consistent view while writers are held off.
  void read(const std::function<void(const std::vector<LabelRecord>&)>& fn) const;

 private:
  void persist_locked() const;

  mutable std::shared_mutex mutex_;
  std::optional<std::filesystem::path> path_;
  std::vector<LabelRecord> records_;
  std::unordered_map<std::string, std::size_t> index_;  // post_id \x1f annotator_id
  std::vector<AuditEntry> audit_;
};

// Current UTC time as `YYYY-MM-DDThh:mm:ssZ`.
std::string utc_now();

}  // namespace hatelab::annotation
