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

#include "hatelab/models/metrics.hpp"

#include <unordered_map>

#include "hatelab/util/error.hpp"

namespace hatelab::models {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

ClassMetrics class_metrics(std::size_t tp, std::size_t fp, std::size_t fn) {
  ClassMetrics m;
  m.precision = ratio(tp, tp + fp);
  m.recall = ratio(tp, tp + fn);
  m.f1 = m.precision + m.recall == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / (m.precision + m.recall);
  m.support = tp + fn;
  return m;
}

Json class_json(const ClassMetrics& m) {
  return Json{{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}, {"support", m.support}};
}

}  // namespace

EvalReport report_from_confusion(const std::array<std::array<std::size_t, 2>, 2>& c) {
  EvalReport r;
  r.confusion = c;
  r.count = c[0][0] + c[0][1] + c[1][0] + c[1][1];
  r.hate = class_metrics(c[1][1], c[0][1], c[1][0]);
  r.not_hate = class_metrics(c[0][0], c[1][0], c[0][1]);
  r.macro_precision = (r.hate.precision + r.not_hate.precision) / 2.0;
  r.macro_recall = (r.hate.recall + r.not_hate.recall) / 2.0;
  r.macro_f1 = (r.hate.f1 + r.not_hate.f1) / 2.0;
  r.accuracy = ratio(c[0][0] + c[1][1], r.count);
  return r;
}

EvalReport evaluate(const std::vector<std::pair<std::string, bool>>& predictions,
                    const std::vector<std::pair<std::string, bool>>& gold) {
  std::unordered_map<std::string, bool> truth;
  for (const auto& [id, label] : gold) {
    if (!truth.emplace(id, label).second) throw Error(ErrorCode::IdMismatch, "gold repeats id " + id);
  }
  if (predictions.size() != truth.size()) {
    throw Error(ErrorCode::IdMismatch, std::to_string(predictions.size()) + " predictions for " +
                                           std::to_string(truth.size()) + " gold labels");
  }
  std::array<std::array<std::size_t, 2>, 2> c{};
  std::unordered_map<std::string, bool> seen;
  for (const auto& [id, pred] : predictions) {
    auto it = truth.find(id);
    if (it == truth.end()) throw Error(ErrorCode::IdMismatch, "no gold label for id " + id);
    if (!seen.emplace(id, true).second) throw Error(ErrorCode::IdMismatch, "predictions repeat id " + id);
    ++c[it->second ? 1 : 0][pred ? 1 : 0];
  }
  return report_from_confusion(c);
}

Json EvalReport::to_json() const {
  Json j;
  j["count"] = count;
  j["hate"] = class_json(hate);
  j["not_hate"] = class_json(not_hate);
  j["macro"] = {{"precision", macro_precision}, {"recall", macro_recall}, {"f1", macro_f1}};
  j["accuracy"] = accuracy;
  j["confusion"] = {{"gold_not_hate", {{"pred_not_hate", confusion[0][0]}, {"pred_hate", confusion[0][1]}}},
                    {"gold_hate", {{"pred_not_hate", confusion[1][0]}, {"pred_hate", confusion[1][1]}}}};
  if (!folds.empty()) {
    j["folds"] = Json::array();
    for (const auto& f : folds) j["folds"].push_back(f.to_json());
  }
  return j;
}

}  // namespace hatelab::models
