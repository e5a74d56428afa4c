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

// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>

#include "fixtures/posts.hpp"
#include "hatelab/annotation/agreement.hpp"
#include "hatelab/annotation/assign.hpp"
#include "hatelab/corpus/pipeline.hpp"
#include "hatelab/encoding/normalize.hpp"
#include "hatelab/lexicon/lexicon.hpp"
#include "hatelab/lexicon/matcher.hpp"
#include "hatelab/models/cv.hpp"
#include "hatelab/models/metrics.hpp"
#include "hatelab/models/model.hpp"
#include "hatelab/models/synthetic.hpp"
#include "hatelab/text/utf8.hpp"
#include "hatelab/util/random.hpp"
#include "test_support.hpp"

using namespace hatelab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome kappa_pathology() {
  using annotation::Decision;
  std::vector<Decision> a(100, Decision::No), b(100, Decision::No);
  b[50] = Decision::Yes;
  const double agree = annotation::percent_agreement(a, b);
  const double kappa = annotation::cohen_kappa(a, b);
  return {std::abs(agree - 0.99) <= 1e-12 && std::abs(kappa) <= 1e-12,
          fmt("agreement=%.12f kappa=%.3g", agree, kappa)};
}

Outcome lexicon_arithmetic() {
  lexicon::Lexicon a, b;
  for (int i = 0; i < 72; ++i) a.add({U"term-a" + text::decode_utf8(std::to_string(i)), "hatebase", ""});
  for (int i = 0; i < 86; ++i) b.add({U"term-b" + text::decode_utf8(std::to_string(i)), "phandeeyar", ""});
  b.add({a.terms()[3].term, "phandeeyar", ""});
  b.add({a.terms()[60].term, "phandeeyar", ""});
  // "term-a1" is contained in "term-a10".."term-a19": containments stay.
  const auto [merged, report] = lexicon::merge_lexicons(a, b);
  const bool dups_ok = report.exact_duplicates.size() == 2 &&
                       std::count(report.exact_duplicates.begin(), report.exact_duplicates.end(), a.terms()[3].term) &&
                       std::count(report.exact_duplicates.begin(), report.exact_duplicates.end(), a.terms()[60].term);
  bool kept = true;
  for (const auto& [shorter, longer] : report.containments) kept &= merged.contains(shorter) && merged.contains(longer);
  return {a.size() == 72 && b.size() == 88 && merged.size() == 158 && report.total_terms == 158 && dups_ok &&
              !report.containments.empty() && kept,
          fmt("|a|=%zu |b|=%zu merged=%zu exact=%zu containments=%zu", a.size(), b.size(), merged.size(),
              report.exact_duplicates.size(), report.containments.size())};
}

Outcome assignment_arithmetic() {
  std::vector<std::string> team, posts;
  for (int i = 1; i <= 8; ++i) team.push_back("annotator" + std::to_string(i));
  for (int i = 0; i < 5646; ++i) posts.push_back("post" + std::to_string(i));
  annotation::AssignmentConfig cfg;
  cfg.seed = 2021;
  const auto plan = annotation::make_assignments(team, posts, cfg);
  std::vector<std::size_t> sizes;
  for (const auto& [_, list] : plan.solo) sizes.push_back(list.size());
  std::sort(sizes.begin(), sizes.end());
  const std::vector<std::size_t> expect{505, 505, 506, 506, 506, 506, 506, 506};
  return {plan.pairs.size() == 4 && plan.paired_post_count() == 1600 && sizes == expect,
          fmt("pairs=%zu paired=%zu solo=%zux506+%zux505", plan.pairs.size(), plan.paired_post_count(),
              static_cast<std::size_t>(std::count(sizes.begin(), sizes.end(), 506)),
              static_cast<std::size_t>(std::count(sizes.begin(), sizes.end(), 505)))};
}

Outcome oversampling_direction() {
  using namespace models;
  const auto start = std::chrono::steady_clock::now();
  const ModelType types[] = {ModelType::Svm, ModelType::Brf, ModelType::FastText};
  // [type][os] sums over seeds
  double recall[3][2] = {}, f1[3][2] = {};
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    SyntheticConfig cfg;
    cfg.seed = seed;
    const auto corpus = make_synthetic_corpus(cfg);
    const auto split = stratified_split(corpus.data, 0.2, seed);
    std::vector<std::pair<std::string, bool>> gold;
    for (const auto& e : split.test.examples) gold.emplace_back(e.id, e.hate);
    for (int t = 0; t < 3; ++t) {
      ModelSpec spec;
      spec.type = types[t];
      spec.fasttext.buckets = 1u << 20;
      for (int os = 0; os < 2; ++os) {
        const auto model = train_model(spec, split.train, seed, os == 1);
        std::vector<std::pair<std::string, bool>> pred;
        for (const auto& e : split.test.examples) pred.emplace_back(e.id, predict(model, e.tokens).hate);
        const auto r = evaluate(pred, gold);
        recall[t][os] += r.hate.recall / 5;
        f1[t][os] += r.macro_f1 / 5;
        std::printf("    seed %llu %-8s oversample=%d recall=%.3f macro_f1=%.4f\n",
                    static_cast<unsigned long long>(seed), std::string(to_string(types[t])).c_str(), os,
                    r.hate.recall, r.macro_f1);
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool recall_ok = true;
  int f1_improved = 0;
  std::string detail;
  for (int t = 0; t < 3; ++t) {
    const bool r_ok = recall[t][1] >= recall[t][0];
    recall_ok &= r_ok;
    f1_improved += f1[t][1] > f1[t][0];
    detail += fmt("%s recall %.3f->%.3f%s f1 %.4f->%.4f; ", std::string(to_string(types[t])).c_str(), recall[t][0],
                  recall[t][1], r_ok ? "" : " (LOWER)", f1[t][0], f1[t][1]);
  }
  detail += fmt("macro-F1 improved for %d/3; %.0fs", f1_improved, secs);
  return {recall_ok && f1_improved >= 2 && secs < 300.0, detail};
}

Outcome zawgyi_golden() {
  const auto& n = encoding::Normalizer::shipped();
  const auto pairs = testing::data_rows("zawgyi_golden_pairs.tsv");
  std::size_t exact = 0;
  for (const auto& row : pairs) {
    auto out = n.zawgyi_to_unicode(text::decode_utf8(row[0]));
    encoding::canonical_order(out);
    exact += text::encode_utf8(out) == row[1];
  }
  const auto fixture = testing::data_rows("encoding_detection_fixture.tsv");
  std::size_t correct = 0;
  for (const auto& row : fixture) correct += encoding::to_string(n.detect(text::decode_utf8(row[1])).label) == row[0];
  const double acc = static_cast<double>(correct) / static_cast<double>(fixture.size());
  return {pairs.size() >= 50 && exact == pairs.size() && fixture.size() >= 100 && acc >= 0.95,
          fmt("golden %zu/%zu exact; detector %zu/%zu = %.3f", exact, pairs.size(), correct, fixture.size(), acc)};
}

Outcome pipeline_invariants() {
  const auto posts = testing::make_posts(10000, 2024);
  lexicon::Lexicon lex;
  lex.add({text::decode_utf8("လူမျိုး"), "custom", ""});
  const lexicon::Matcher matcher(lex);
  corpus::CleanConfig cfg;
  cfg.seed = 7;
  const auto a = corpus::clean_pipeline(posts, matcher, cfg);
  const auto b = corpus::clean_pipeline(posts, matcher, cfg);
  const bool deterministic = corpus::corpus_to_jsonl(a.posts) == corpus::corpus_to_jsonl(b.posts) &&
                             a.report.to_json().dump() == b.report.to_json().dump();
  bool monotone = a.report.steps.front().input_count == posts.size();
  for (std::size_t i = 0; i < a.report.steps.size(); ++i) {
    const auto& s = a.report.steps[i];
    monotone &= s.output_count <= s.input_count && s.removed_count == s.input_count - s.output_count;
    if (i > 0) monotone &= s.input_count == a.report.steps[i - 1].output_count;
  }
  std::map<std::string, std::size_t> per_source;
  for (const auto& p : a.posts) ++per_source[p.source_id];
  std::size_t biggest = 0;
  for (const auto& [_, c] : per_source) biggest = std::max(biggest, c);
  const bool feasible = biggest <= (a.posts.size() + 1) / 2;
  std::size_t adjacent = 0;
  for (std::size_t i = 1; i < a.posts.size(); ++i) adjacent += a.posts[i].source_id == a.posts[i - 1].source_id;
  return {deterministic && monotone && feasible && adjacent == 0,
          fmt("rows=%zu kept=%zu deterministic=%d monotone=%d adjacencies=%zu", posts.size(), a.posts.size(),
              deterministic, monotone, adjacent)};
}

Outcome cv_hygiene() {
  using namespace models;
  SyntheticConfig scfg;
  scfg.posts = 2000;
  scfg.positive_rate = 0.05;
  auto data = make_synthetic_corpus(scfg).data;
  // One unique sentinel per example.
  for (auto& e : data.examples) e.tokens.push_back(U"sentinel-" + text::decode_utf8(e.id));
  ModelSpec spec;
  const std::size_t k = 5;
  const auto cv = cross_validate(data, spec, k, 99, true);
  bool leak_free = true;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto gram = "w:sentinel-" + data.examples[i].id;
    for (std::size_t f = 0; f < k; ++f) {
      const bool present = std::binary_search(cv.fold_vocab[f].begin(), cv.fold_vocab[f].end(), gram);
      leak_free &= present == (cv.fold_of[i] != f);
    }
  }
  bool once = cv.predictions.size() == data.size();
  std::size_t fold_total = 0;
  for (const auto& f : cv.report.folds) fold_total += f.count;
  once &= fold_total == data.size();
  for (std::size_t i = 0; once && i < data.size(); ++i) once &= cv.predictions[i].first == data.examples[i].id;
  std::vector<std::array<std::size_t, 2>> counts(k);
  for (std::size_t i = 0; i < data.size(); ++i) ++counts[cv.fold_of[i]][data.examples[i].hate];
  std::size_t spread = 0;
  for (int c = 0; c < 2; ++c) {
    std::size_t lo = SIZE_MAX, hi = 0;
    for (const auto& f : counts) {
      lo = std::min(lo, f[c]);
      hi = std::max(hi, f[c]);
    }
    spread = std::max(spread, hi - lo);
  }
  return {leak_free && once && spread <= 1,
          fmt("leak_free=%d tested_once=%d max_class_spread=%zu", leak_free, once, spread)};
}

Outcome metric_oracle() {
  auto labelled = [](const std::vector<bool>& v) {
    std::vector<std::pair<std::string, bool>> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.emplace_back("x" + std::to_string(i), v[i]);
    return out;
  };
  const auto fixed = models::evaluate(labelled({true, false, false, false}), labelled({true, true, false, false}));
  const bool fixed_ok = std::abs(fixed.macro_f1 - 11.0 / 15.0) <= 1e-9;
  Rng rng(1234);
  double worst = 0.0;
  for (int round = 0; round < 100; ++round) {
    const auto n = 1 + rng.below(50);
    std::vector<bool> gold, pred;
    for (std::uint64_t i = 0; i < n; ++i) {
      gold.push_back(rng.below(2) == 0);
      pred.push_back(rng.below(2) == 0);
    }
    double sum = 0;
    for (bool cls : {false, true}) {
      double tp = 0, fp = 0, fn = 0;
      for (std::size_t i = 0; i < n; ++i) {
        tp += pred[i] == cls && gold[i] == cls;
        fp += pred[i] == cls && gold[i] != cls;
        fn += pred[i] != cls && gold[i] == cls;
      }
      const double p = tp + fp ? tp / (tp + fp) : 0, r = tp + fn ? tp / (tp + fn) : 0;
      sum += p + r ? 2 * p * r / (p + r) : 0;
    }
    worst = std::max(worst, std::abs(models::evaluate(labelled(pred), labelled(gold)).macro_f1 - sum / 2));
  }
  return {fixed_ok && worst <= 1e-9, fmt("fixed macro_f1=%.12f; max brute-force deviation %.3g", fixed.macro_f1, worst)};
}

Outcome model_round_trip() {
  using namespace models;
  SyntheticConfig scfg;
  scfg.posts = 2500;
  scfg.positive_rate = 0.1;
  const auto data = make_synthetic_corpus(scfg).data;
  const auto split = stratified_split(data, 0.2, 5);
  testing::TempDir dir;
  std::size_t mismatches = 0, checked = 0;
  for (auto type : {ModelType::Svm, ModelType::Brf, ModelType::FastText}) {
    ModelSpec spec;
    spec.type = type;
    spec.fasttext.buckets = 1u << 18;
    const auto model = train_model(spec, split.train, 3, true);
    model.save(dir / "model.json");
    const auto loaded = ModelArtifact::load(dir / "model.json");
    for (std::size_t i = 0; i < 500; ++i) {
      const auto& tokens = split.test.examples[i].tokens;
      const auto p = predict(model, tokens), q = predict(loaded, tokens);
      mismatches += p.hate != q.hate || p.score != q.score;
      ++checked;
    }
  }
  return {checked == 1500 && mismatches == 0, fmt("%zu predictions compared, %zu differ", checked, mismatches)};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"kappa pathology", kappa_pathology},
      {"lexicon arithmetic", lexicon_arithmetic},
      {"assignment arithmetic", assignment_arithmetic},
      {"oversampling direction", oversampling_direction},
      {"zawgyi golden file and detector", zawgyi_golden},
      {"pipeline invariants", pipeline_invariants},
      {"cv hygiene", cv_hygiene},
      {"metric oracle", metric_oracle},
      {"model round-trip", model_round_trip},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s  %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures, std::size(criteria));
  return failures == 0 ? 0 : 1;
}
