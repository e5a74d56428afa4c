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

#include "hatelab/annotation/agreement.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "hatelab/util/error.hpp"

namespace hatelab::annotation {

double percent_agreement(std::span<const Decision> a, std::span<const Decision> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::BatchMismatch, "label vectors differ in length");
  if (a.empty()) throw Error(ErrorCode::BatchMismatch, "empty batch");
  std::size_t same = 0;
  for (std::size_t i = 0; i < a.size(); ++i) same += a[i] == b[i];
  return static_cast<double>(same) / static_cast<double>(a.size());
}

double cohen_kappa(std::span<const Decision> a, std::span<const Decision> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::BatchMismatch, "label vectors differ in length");
  if (a.empty()) throw Error(ErrorCode::BatchMismatch, "empty batch");
  std::uint64_t same = 0, a_yes = 0, b_yes = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    same += a[i] == b[i];
    a_yes += a[i] == Decision::Yes;
    b_yes += b[i] == Decision::Yes;
  }
  const std::uint64_t count = a.size();
  // kappa = (n * agree - E) / (n^2 - E) with E = n^2 * p_e, all integers.
  const std::uint64_t expected = a_yes * b_yes + (count - a_yes) * (count - b_yes);
  const std::uint64_t total = count * count;
  if (expected == total) return same == count ? 1.0 : 0.0;
  const long double num = static_cast<long double>(count * same) - static_cast<long double>(expected);
  const long double den = static_cast<long double>(total - expected);
  return static_cast<double>(num / den);
}

std::pair<std::vector<Decision>, std::vector<Decision>> align(const std::vector<LabelRecord>& a,
                                                              const std::vector<LabelRecord>& b) {
  std::map<std::string, Decision> ma, mb;
  for (const auto& r : a) {
    if (!ma.emplace(r.post_id, r.decision).second) throw Error(ErrorCode::BatchMismatch, "duplicate post " + r.post_id);
  }
  for (const auto& r : b) {
    if (!mb.emplace(r.post_id, r.decision).second) throw Error(ErrorCode::BatchMismatch, "duplicate post " + r.post_id);
  }
  if (ma.size() != mb.size()) throw Error(ErrorCode::BatchMismatch, "annotators labelled different post sets");
  std::pair<std::vector<Decision>, std::vector<Decision>> out;
  for (auto ia = ma.begin(), ib = mb.begin(); ia != ma.end(); ++ia, ++ib) {
    if (ia->first != ib->first) {
      throw Error(ErrorCode::BatchMismatch, "annotators labelled different post sets (e.g. " + ia->first + ")");
    }
    out.first.push_back(ia->second);
    out.second.push_back(ib->second);
  }
  return out;
}

double percent_agreement(const std::vector<LabelRecord>& a, const std::vector<LabelRecord>& b) {
  const auto [x, y] = align(a, b);
  return percent_agreement(std::span<const Decision>(x), std::span<const Decision>(y));
}

double cohen_kappa(const std::vector<LabelRecord>& a, const std::vector<LabelRecord>& b) {
  const auto [x, y] = align(a, b);
  return cohen_kappa(std::span<const Decision>(x), std::span<const Decision>(y));
}

double fleiss_kappa(const std::vector<std::vector<Decision>>& matrix) {
  if (matrix.empty()) throw Error(ErrorCode::RaggedMatrix, "no items");
  const std::size_t raters = matrix.front().size();
  if (raters < 2) throw Error(ErrorCode::RaggedMatrix, "each item needs at least two ratings");
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    if (matrix[i].size() != raters) {
      throw Error(ErrorCode::RaggedMatrix, "item " + std::to_string(i) + " has " + std::to_string(matrix[i].size()) +
                                               " ratings, expected " + std::to_string(raters));
    }
  }
  const double n = static_cast<double>(raters);
  const double items = static_cast<double>(matrix.size());
  double p_bar = 0.0;
  std::size_t yes_total = 0;
  for (const auto& row : matrix) {
    const auto yes = static_cast<std::size_t>(std::count(row.begin(), row.end(), Decision::Yes));
    const auto no = raters - yes;
    yes_total += yes;
    p_bar += (static_cast<double>(yes * yes + no * no) - n) / (n * (n - 1.0));
  }
  p_bar /= items;
  const std::size_t cells = matrix.size() * raters;
  if (yes_total == 0 || yes_total == cells) return 0.0;
  const double p_yes = static_cast<double>(yes_total) / static_cast<double>(cells);
  const double p_e = p_yes * p_yes + (1.0 - p_yes) * (1.0 - p_yes);
  return (p_bar - p_e) / (1.0 - p_e);
}

std::string_view to_string(FinalStatus s) {
  switch (s) {
    case FinalStatus::Agreed: return "agreed";
    case FinalStatus::NeedsFacilitator: return "needs_facilitator";
    case FinalStatus::Adjudicated: return "adjudicated";
  }
  return "unknown";
}

Json FinalLabel::to_json() const {
  Json j;
  j["post_id"] = post_id;
  j["status"] = to_string(status);
  j["decision"] = decision ? Json(to_string(*decision)) : Json(nullptr);
  j["characteristics"] = characteristics;
  j["audit"] = audit;
  return j;
}

namespace {

std::vector<std::string> union_of(const std::vector<const LabelRecord*>& yes) {
  std::set<std::string> all;
  for (const auto* r : yes) all.insert(r->characteristics.begin(), r->characteristics.end());
  return {all.begin(), all.end()};
}

}  // namespace

FinalLabel adjudicate(const std::string& post_id, const std::vector<LabelRecord>& labels,
                      std::optional<Decision> facilitator_decision,
                      const std::vector<std::string>& facilitator_characteristics) {
  std::vector<const LabelRecord*> mine;
  for (const auto& r : labels) {
    if (r.post_id == post_id && r.annotator_id != kAdjudicatedId) mine.push_back(&r);
  }
  if (mine.size() != 2 || mine[0]->annotator_id == mine[1]->annotator_id) {
    throw Error(ErrorCode::MissingLabel, "post " + post_id + " needs labels from both pair members, found " +
                                             std::to_string(mine.size()));
  }
  FinalLabel out;
  out.post_id = post_id;
  const LabelRecord& a = *mine[0];
  const LabelRecord& b = *mine[1];
  out.audit.push_back(a.annotator_id + ": " + std::string(to_string(a.decision)));
  out.audit.push_back(b.annotator_id + ": " + std::string(to_string(b.decision)));
  std::vector<const LabelRecord*> yes;
  for (const auto* r : mine) {
    if (r->decision == Decision::Yes) yes.push_back(r);
  }
  if (a.decision == b.decision) {
    out.status = FinalStatus::Agreed;
    out.decision = a.decision;
    if (a.decision == Decision::Yes) out.characteristics = union_of(yes);
    if (facilitator_decision && *facilitator_decision != a.decision) {
      out.status = FinalStatus::Adjudicated;
      out.decision = facilitator_decision;
      out.audit.push_back("facilitator overrode agreed " + std::string(to_string(a.decision)) + " with " +
                          std::string(to_string(*facilitator_decision)));
      out.characteristics = *facilitator_decision == Decision::Yes ? facilitator_characteristics
                                                                   : std::vector<std::string>{};
    }
    return out;
  }
  if (!facilitator_decision) {
    out.status = FinalStatus::NeedsFacilitator;
    out.audit.push_back("disagreement; awaiting facilitator");
    return out;
  }
  out.status = FinalStatus::Adjudicated;
  out.decision = facilitator_decision;
  out.audit.push_back("facilitator ruled " + std::string(to_string(*facilitator_decision)));
  if (*facilitator_decision == Decision::Yes) {
    out.characteristics = facilitator_characteristics.empty() ? union_of(yes) : facilitator_characteristics;
  }
  return out;
}

std::vector<std::pair<std::string, std::size_t>> characteristics_distribution(const std::vector<FinalLabel>& labels) {
  std::map<std::string, std::size_t> counts;
  for (const auto& l : labels) {
    if (l.decision != Decision::Yes) continue;
    for (const auto& c : l.characteristics) ++counts[c];
  }
  std::vector<std::pair<std::string, std::size_t>> out(counts.begin(), counts.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.second > y.second; });
  return out;
}

ResolvedLabels resolve_labels(const std::vector<LabelRecord>& records) {
  std::vector<std::string> order;
  std::unordered_map<std::string, std::vector<const LabelRecord*>> by_post;
  for (const auto& r : records) {
    auto [it, inserted] = by_post.try_emplace(r.post_id);
    if (inserted) order.push_back(r.post_id);
    it->second.push_back(&r);
  }
  ResolvedLabels out;
  for (const auto& id : order) {
    const auto& recs = by_post.at(id);
    FinalLabel f;
    f.post_id = id;
    auto ruling = std::find_if(recs.begin(), recs.end(), [](const auto* r) { return r->annotator_id == kAdjudicatedId; });
    if (ruling != recs.end()) {
      f.status = FinalStatus::Adjudicated;
      f.decision = (*ruling)->decision;
      f.characteristics = (*ruling)->characteristics;
      out.labels.push_back(std::move(f));
      continue;
    }
    const bool agree = std::all_of(recs.begin(), recs.end(), [&](const auto* r) { return r->decision == recs[0]->decision; });
    if (!agree) {
      out.unresolved.push_back(id);
      continue;
    }
    f.status = FinalStatus::Agreed;
    f.decision = recs[0]->decision;
    if (*f.decision == Decision::Yes) {
      std::vector<const LabelRecord*> yes(recs.begin(), recs.end());
      f.characteristics = union_of(yes);
    }
    out.labels.push_back(std::move(f));
  }
  return out;
}

namespace {

using Index = std::unordered_map<std::string, std::unordered_map<std::string, const LabelRecord*>>;

Index index_by_annotator(const std::vector<LabelRecord>& records) {
  Index idx;
  for (const auto& r : records) idx[r.annotator_id][r.post_id] = &r;
  return idx;
}

std::optional<PairRoundResult> pair_round(const AssignmentPlan& plan, std::size_t pair, int round, const Index& idx,
                                          std::size_t* labelled_a, std::size_t* labelled_b) {
  const auto& batch = plan.rounds.at(pair).at(static_cast<std::size_t>(round) - 1);
  const auto& [ida, idb] = plan.pairs.at(pair);
  auto lookup = [&](const std::string& who) {
    auto it = idx.find(who);
    return it == idx.end() ? nullptr : &it->second;
  };
  const auto* la = lookup(ida);
  const auto* lb = lookup(idb);
  std::vector<Decision> da, db;
  std::vector<std::string> diff;
  std::size_t ca = 0, cb = 0;
  for (const auto& post : batch) {
    const LabelRecord* ra = nullptr;
    const LabelRecord* rb = nullptr;
    if (la) {
      auto it = la->find(post);
      if (it != la->end()) ra = it->second;
    }
    if (lb) {
      auto it = lb->find(post);
      if (it != lb->end()) rb = it->second;
    }
    ca += ra != nullptr;
    cb += rb != nullptr;
    if (ra && rb) {
      da.push_back(ra->decision);
      db.push_back(rb->decision);
      if (ra->decision != rb->decision) diff.push_back(post);
    }
  }
  if (labelled_a) *labelled_a = ca;
  if (labelled_b) *labelled_b = cb;
  if (batch.empty() || ca != batch.size() || cb != batch.size()) return std::nullopt;
  PairRoundResult res;
  res.agreement = percent_agreement(std::span<const Decision>(da), std::span<const Decision>(db));
  res.kappa = cohen_kappa(std::span<const Decision>(da), std::span<const Decision>(db));
  res.disagreements = std::move(diff);
  return res;
}

}  // namespace

std::optional<PairRoundResult> pair_round_agreement(const AssignmentPlan& plan, std::size_t pair, int round,
                                                    const std::vector<LabelRecord>& records) {
  if (pair >= plan.pairs.size() || round < 1 || static_cast<std::size_t>(round) > plan.rounds.at(pair).size()) {
    throw Error(ErrorCode::InvalidArgument, "no such pair/round in the plan");
  }
  return pair_round(plan, pair, round, index_by_annotator(records), nullptr, nullptr);
}

AgreementTimeline agreement_timeline(const AssignmentPlan& plan, const std::vector<LabelRecord>& records) {
  AgreementTimeline t;
  t.pairs = plan.pairs;
  t.rounds = plan.config.paired_rounds;
  const auto idx = index_by_annotator(records);
  std::vector<double> sums(t.rounds, 0.0);
  std::vector<std::size_t> complete(t.rounds, 0);
  for (std::size_t p = 0; p < plan.pairs.size(); ++p) {
    for (std::size_t r = 1; r <= t.rounds && r <= plan.rounds[p].size(); ++r) {
      TimelineCell cell;
      cell.pair = p;
      cell.round = static_cast<int>(r);
      const auto res = pair_round(plan, p, cell.round, idx, &cell.labelled_a, &cell.labelled_b);
      if (res) {
        cell.agreement = res->agreement;
        cell.kappa = res->kappa;
        sums[r - 1] += res->agreement;
        ++complete[r - 1];
      }
      t.cells.push_back(cell);
    }
  }
  for (std::size_t r = 0; r < t.rounds; ++r) {
    if (complete[r] == plan.pairs.size() && complete[r] > 0) {
      t.round_mean.push_back(sums[r] / static_cast<double>(complete[r]));
    } else {
      t.round_mean.push_back(std::nullopt);
    }
  }
  for (std::size_t p = 0; p < plan.pairs.size(); ++p) {
    for (const auto* who : {&plan.pairs[p].first, &plan.pairs[p].second}) {
      for (std::size_t r = 1; r <= plan.rounds[p].size(); ++r) {
        Marginal m;
        m.annotator = *who;
        m.round = static_cast<int>(r);
        auto it = idx.find(*who);
        if (it != idx.end()) {
          for (const auto& post : plan.rounds[p][r - 1]) {
            auto jt = it->second.find(post);
            if (jt == it->second.end()) continue;
            if (jt->second->decision == Decision::Yes) ++m.yes;
            else ++m.no;
          }
        }
        t.marginals.push_back(m);
      }
    }
  }
  return t;
}

Json AgreementTimeline::to_json() const {
  Json j;
  j["pairs"] = Json::array();
  for (const auto& [a, b] : pairs) j["pairs"].push_back({a, b});
  j["rounds"] = rounds;
  j["cells"] = Json::array();
  for (const auto& c : cells) {
    j["cells"].push_back({{"pair", c.pair},
                          {"round", c.round},
                          {"agreement", c.agreement ? Json(*c.agreement) : Json(nullptr)},
                          {"kappa", c.kappa ? Json(*c.kappa) : Json(nullptr)},
                          {"labelled", {c.labelled_a, c.labelled_b}}});
  }
  j["round_mean"] = Json::array();
  for (const auto& m : round_mean) j["round_mean"].push_back(m ? Json(*m) : Json(nullptr));
  j["marginals"] = Json::array();
  for (const auto& m : marginals) {
    j["marginals"].push_back({{"annotator", m.annotator}, {"round", m.round}, {"yes", m.yes}, {"no", m.no}});
  }
  return j;
}

Json ObservedPair::to_json() const {
  return Json{{"annotators", {a, b}},
              {"shared", shared},
              {"agreement", agreement},
              {"kappa", kappa},
              {"disagreements", disagreements}};
}

std::vector<ObservedPair> observed_pair_agreement(const std::vector<LabelRecord>& records, int round) {
  std::map<std::string, std::vector<const LabelRecord*>> by_post;
  for (const auto& r : records) {
    if (r.round == round && r.annotator_id != kAdjudicatedId) by_post[r.post_id].push_back(&r);
  }
  std::map<std::pair<std::string, std::string>, std::vector<std::pair<const LabelRecord*, const LabelRecord*>>> shared;
  for (auto& [id, recs] : by_post) {
    if (recs.size() != 2 || recs[0]->annotator_id == recs[1]->annotator_id) continue;
    if (recs[1]->annotator_id < recs[0]->annotator_id) std::swap(recs[0], recs[1]);
    shared[{recs[0]->annotator_id, recs[1]->annotator_id}].emplace_back(recs[0], recs[1]);
  }
  std::vector<ObservedPair> out;
  for (const auto& [key, items] : shared) {
    ObservedPair p;
    p.a = key.first;
    p.b = key.second;
    p.shared = items.size();
    std::vector<Decision> da, db;
    for (const auto& [ra, rb] : items) {
      da.push_back(ra->decision);
      db.push_back(rb->decision);
      if (ra->decision != rb->decision) p.disagreements.push_back(ra->post_id);
    }
    p.agreement = percent_agreement(da, db);
    p.kappa = cohen_kappa(da, db);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace hatelab::annotation

