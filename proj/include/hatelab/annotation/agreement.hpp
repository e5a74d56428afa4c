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
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hatelab/annotation/assign.hpp"
#include "hatelab/annotation/labels.hpp"
#include "hatelab/util/json.hpp"

namespace hatelab::annotation {

// Position-aligned decisions; throws Error(BatchMismatch) on length mismatch
// or an empty batch.
double percent_agreement(std::span<const Decision> a, std::span<const Decision> b);

// p_e is computed from integer counts, so p_e = 1 is detected exactly. In that
// case the result is 1.0 when every label agrees and 0.0 otherwise.
double cohen_kappa(std::span<const Decision> a, std::span<const Decision> b);

// Record overloads align by post_id and throw Error(BatchMismatch) when the
// two annotators labelled different post sets.
double percent_agreement(const std::vector<LabelRecord>& a, const std::vector<LabelRecord>& b);
double cohen_kappa(const std::vector<LabelRecord>& a, const std::vector<LabelRecord>& b);

// Aligns two record lists by post_id (sorted by id).
std::pair<std::vector<Decision>, std::vector<Decision>> align(const std::vector<LabelRecord>& a,
                                                              const std::vector<LabelRecord>& b);

// items x annotators. Throws Error(RaggedMatrix) when row lengths differ or a
// row has fewer than two ratings. A single category everywhere gives 0.0.
double fleiss_kappa(const std::vector<std::vector<Decision>>& matrix);

enum class FinalStatus { Agreed, NeedsFacilitator, Adjudicated };

std::string_view to_string(FinalStatus s);

struct FinalLabel {
  std::string post_id;
  FinalStatus status = FinalStatus::NeedsFacilitator;
  std::optional<Decision> decision;
  std::vector<std::string> characteristics;
  std::vector<std::string> audit;

  Json to_json() const;
};

// `labels` must hold exactly two records for `post_id` from different
// annotators (others are ignored); throws Error(MissingLabel) otherwise.
// Characteristics of a Yes outcome are the union of the Yes labellers' sets
// unless the facilitator supplies their own.
FinalLabel adjudicate(const std::string& post_id, const std::vector<LabelRecord>& labels,
                      std::optional<Decision> facilitator_decision = std::nullopt,
                      const std::vector<std::string>& facilitator_characteristics = {});

// Counts over Yes outcomes, descending count then name.
std::vector<std::pair<std::string, std::size_t>> characteristics_distribution(const std::vector<FinalLabel>& labels);

// Per post: a facilitator ruling (annotator kAdjudicatedId) wins, otherwise
// the decision when all labellers agree. Unresolved posts are listed apart.
struct ResolvedLabels {
  std::vector<FinalLabel> labels;  // in first-seen post order
  std::vector<std::string> unresolved;
};
ResolvedLabels resolve_labels(const std::vector<LabelRecord>& records);

struct TimelineCell {
  std::size_t pair = 0;
  int round = 0;
  std::optional<double> agreement;  // absent until both members labelled the whole batch
  std::optional<double> kappa;
  std::size_t labelled_a = 0;
  std::size_t labelled_b = 0;
};

struct Marginal {
  std::string annotator;
  int round = 0;
  std::size_t yes = 0;
  std::size_t no = 0;
};

struct AgreementTimeline {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::size_t rounds = 0;
  std::vector<TimelineCell> cells;                // pair-major
  std::vector<std::optional<double>> round_mean;  // mean over pairs, when all complete
  std::vector<Marginal> marginals;                // pair order, then round

  Json to_json() const;
};

AgreementTimeline agreement_timeline(const AssignmentPlan& plan, const std::vector<LabelRecord>& records);

// Round batch agreement for one pair; nullopt when either member has not
// labelled every post in the batch.
struct PairRoundResult {
  double agreement = 0.0;
  double kappa = 0.0;
  std::vector<std::string> disagreements;
};
std::optional<PairRoundResult> pair_round_agreement(const AssignmentPlan& plan, std::size_t pair, int round,
                                                    const std::vector<LabelRecord>& records);

// Agreement between annotators who labelled the same posts in `round`, without
// a plan: every post with exactly two (non-facilitator) labels contributes to
// that annotator pair. Pairs are sorted by annotator ids.
struct ObservedPair {
  std::string a;
  std::string b;
  std::size_t shared = 0;
  double agreement = 0.0;
  double kappa = 0.0;
  std::vector<std::string> disagreements;

  Json to_json() const;
};
std::vector<ObservedPair> observed_pair_agreement(const std::vector<LabelRecord>& records, int round);

}  // namespace hatelab::annotation
