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

#include "hatelab/cli/cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <cstdlib>
#include <iostream>
#include <map>
#include <set>
#include <unordered_map>

#include "hatelab/annotation/agreement.hpp"
#include "hatelab/annotation/labels.hpp"
#include "hatelab/corpus/ingest.hpp"
#include "hatelab/lexicon/lexicon.hpp"
#include "hatelab/lexicon/matcher.hpp"
#include "hatelab/models/cv.hpp"
#include "hatelab/models/metrics.hpp"
#include "hatelab/review/review.hpp"
#include "hatelab/server/service.hpp"
#include "hatelab/text/utf8.hpp"
#include "hatelab/util/error.hpp"
#include "hatelab/util/io.hpp"

namespace hatelab::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename T>
void read_opt(const Json& j, const char* key, T& field) {
  if (j.contains(key) && !j.at(key).is_null()) field = j.at(key).get<T>();
}

}  // namespace

Json RunConfig::to_json() const {
  Json j;
  j["seed"] = seed ? Json(*seed) : Json(nullptr);
  j["paths"] = {{"data_dir", paths.data_dir},       {"dictionary", paths.dictionary}, {"stopwords", paths.stopwords},
                {"corpus", paths.corpus},           {"lexicons", paths.lexicons},     {"labels", paths.labels},
                {"models", paths.models},           {"plan", paths.plan},             {"accounts", paths.accounts},
                {"characteristics", paths.characteristics}};
  j["pipeline"] = {{"min_syllables", min_syllables},
                   {"ratio_threshold", ratio_threshold},
                   {"detection_threshold", detection_threshold}};
  j["model"] = model.to_json();
  j["cv"] = cv;
  j["oversample"] = oversample;
  j["grid"] = grid;
  j["assignment"] = {{"batch_size", batch_size}, {"paired_rounds", paired_rounds}, {"annotators", annotators}};
  return j;
}

RunConfig RunConfig::from_json(const Json& j) {
  RunConfig c;
  try {
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "run config must be a JSON object");
    if (j.contains("seed") && !j.at("seed").is_null()) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("paths")) {
      const Json& p = j.at("paths");
      read_opt(p, "data_dir", c.paths.data_dir);
      read_opt(p, "dictionary", c.paths.dictionary);
      read_opt(p, "stopwords", c.paths.stopwords);
      read_opt(p, "corpus", c.paths.corpus);
      read_opt(p, "lexicons", c.paths.lexicons);
      read_opt(p, "labels", c.paths.labels);
      read_opt(p, "models", c.paths.models);
      read_opt(p, "plan", c.paths.plan);
      read_opt(p, "accounts", c.paths.accounts);
      read_opt(p, "characteristics", c.paths.characteristics);
    }
    if (j.contains("pipeline")) {
      const Json& p = j.at("pipeline");
      read_opt(p, "min_syllables", c.min_syllables);
      read_opt(p, "ratio_threshold", c.ratio_threshold);
      read_opt(p, "detection_threshold", c.detection_threshold);
    }
    if (j.contains("model")) c.model = models::ModelSpec::from_json(j.at("model"));
    read_opt(j, "cv", c.cv);
    read_opt(j, "oversample", c.oversample);
    read_opt(j, "grid", c.grid);
    if (j.contains("assignment")) {
      const Json& a = j.at("assignment");
      read_opt(a, "batch_size", c.batch_size);
      read_opt(a, "paired_rounds", c.paired_rounds);
      read_opt(a, "annotators", c.annotators);
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("run config: ") + e.what());
  }
  return c;
}

namespace {

std::atomic<server::HttpServer*> g_server{nullptr};

extern "C" void handle_stop_signal(int) {
  if (auto* s = g_server.load()) s->stop();
}

// Flag values; unset optionals leave the config untouched.
struct Flags {
  std::optional<std::uint64_t> seed;
  std::string in, out, report, corpus, labels, plan, users, data_dir, dictionary, stopwords, characteristics;
  std::vector<std::string> lexicons;
  std::optional<std::size_t> min_syllables;
  std::optional<double> ratio_threshold, detection_threshold;

  std::string model_type, model_path;
  bool oversample = false, grid = false;
  std::optional<std::size_t> cv;
  std::optional<double> lambda, lr;
  std::optional<int> epochs, word_ngrams, char_min, char_max;
  std::optional<std::size_t> trees, max_depth, features_per_split, min_samples_split, dim, min_count;
  std::optional<std::uint64_t> buckets;
  std::string ngrams, weighting;

  std::string annotators;
  std::optional<std::size_t> batch_size, rounds;
  std::optional<int> round;
  std::string post, decision, characteristic_list;

  std::string items, strategy;
  std::optional<std::size_t> n;

  std::vector<std::string> positional;
  std::string host = "127.0.0.1";
  std::optional<int> port;
};

std::vector<features::NgramSpec> parse_ngrams(const std::string& text) {
  std::vector<features::NgramSpec> out;
  for (const auto& part : split(text, ',')) {
    const auto colon = part.find(':');
    if (colon == std::string::npos) throw UsageError("--ngrams expects unit:lo-hi, got '" + part + "'");
    const std::string unit = part.substr(0, colon);
    const std::string range = part.substr(colon + 1);
    const auto dash = range.find('-');
    try {
      features::NgramSpec s;
      s.unit = features::parse_unit(unit);
      s.lo = std::stoi(range.substr(0, dash));
      s.hi = dash == std::string::npos ? s.lo : std::stoi(range.substr(dash + 1));
      if (s.lo < 1 || s.hi < s.lo) throw UsageError("--ngrams range must satisfy 1 <= lo <= hi");
      out.push_back(s);
    } catch (const std::logic_error&) {
      throw UsageError("--ngrams expects unit:lo-hi, got '" + part + "'");
    } catch (const Error&) {
      throw UsageError("--ngrams has an unknown unit '" + unit + "'");
    }
  }
  if (out.empty()) throw UsageError("--ngrams is empty");
  return out;
}

std::vector<std::string> comma_list(const std::string& text) {
  std::vector<std::string> out;
  for (const auto& p : split(text, ',')) {
    const auto t = trim(p);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

void apply(const Flags& f, RunConfig& c) {
  if (f.seed) c.seed = f.seed;
  if (!f.corpus.empty()) c.paths.corpus = f.corpus;
  if (!f.labels.empty()) c.paths.labels = f.labels;
  if (!f.plan.empty()) c.paths.plan = f.plan;
  if (!f.users.empty()) c.paths.accounts = f.users;
  if (!f.data_dir.empty()) c.paths.data_dir = f.data_dir;
  if (!f.dictionary.empty()) c.paths.dictionary = f.dictionary;
  if (!f.stopwords.empty()) c.paths.stopwords = f.stopwords;
  if (!f.characteristics.empty()) c.paths.characteristics = f.characteristics;
  if (!f.lexicons.empty()) c.paths.lexicons = f.lexicons;
  if (f.min_syllables) c.min_syllables = *f.min_syllables;
  if (f.ratio_threshold) c.ratio_threshold = *f.ratio_threshold;
  if (f.detection_threshold) c.detection_threshold = *f.detection_threshold;
  if (!f.model_type.empty()) {
    try {
      c.model.type = models::parse_model_type(f.model_type);
    } catch (const Error&) {
      throw UsageError("--model must be svm, brf or fasttext");
    }
  }
  if (f.oversample) c.oversample = true;
  if (f.grid) c.grid = true;
  if (f.cv) c.cv = *f.cv;
  if (f.lambda) c.model.svm.lambda = *f.lambda;
  if (f.epochs) c.model.svm.epochs = c.model.fasttext.epochs = *f.epochs;
  if (f.trees) c.model.brf.n_trees = *f.trees;
  if (f.max_depth) c.model.brf.max_depth = *f.max_depth;
  if (f.features_per_split) c.model.brf.features_per_split = *f.features_per_split;
  if (f.min_samples_split) c.model.brf.min_samples_split = *f.min_samples_split;
  if (f.dim) c.model.fasttext.dim = *f.dim;
  if (f.lr) c.model.fasttext.lr = *f.lr;
  if (f.word_ngrams) c.model.fasttext.word_ngrams = *f.word_ngrams;
  if (f.char_min) c.model.fasttext.char_min = *f.char_min;
  if (f.char_max) c.model.fasttext.char_max = *f.char_max;
  if (f.buckets) c.model.fasttext.buckets = *f.buckets;
  if (!f.ngrams.empty()) c.model.features.ngrams = parse_ngrams(f.ngrams);
  if (f.min_count) c.model.features.min_count = *f.min_count;
  if (!f.weighting.empty()) {
    if (f.weighting != "tf" && f.weighting != "tfidf") throw UsageError("--weighting must be tf or tfidf");
    c.model.features.weighting = f.weighting == "tf" ? features::Weighting::Tf : features::Weighting::TfIdf;
  }
  if (!f.annotators.empty()) c.annotators = comma_list(f.annotators);
  if (f.batch_size) c.batch_size = *f.batch_size;
  if (f.rounds) c.paired_rounds = *f.rounds;
}

class Runner {
 public:
  Runner(RunConfig config, const Flags& flags, std::ostream& out, std::ostream& err)
      : c_(std::move(config)), f_(flags), out_(out), err_(err) {}

  void ingest();
  void clean();
  void lexicon_merge();
  void assign();
  void agreement();
  void adjudicate();
  void train();
  void evaluate();
  void predict();
  void review_sample();
  void review_report();
  void serve();

 private:
  std::uint64_t seed() const {
    if (!c_.seed) throw UsageError("--seed is required for this command");
    return *c_.seed;
  }
  static const std::string& need(const std::string& value, const char* flag) {
    if (value.empty()) throw UsageError(std::string(flag) + " is required");
    return value;
  }

  // Report JSON with the effective run config, to --report, --out or stdout.
  void emit(const std::string& command, Json report, const std::string& path) {
    Json j;
    j["command"] = command;
    j["config"] = c_.to_json();
    for (auto& [k, v] : report.items()) j[k] = v;
    const std::string text = j.dump(2) + "\n";
    if (path.empty()) {
      out_ << text;
    } else {
      write_file_atomic(path, text);
    }
  }

  corpus::TextResources resources() const {
    if (c_.paths.data_dir.empty() && c_.paths.dictionary.empty() && c_.paths.stopwords.empty()) {
      return corpus::TextResources::shipped();
    }
    const std::filesystem::path dir = c_.paths.data_dir.empty() ? data_dir() : std::filesystem::path(c_.paths.data_dir);
    corpus::TextResources r;
    r.normalizer = std::make_shared<const encoding::Normalizer>(encoding::Normalizer::load(dir));
    r.dictionary = segment::Dictionary::load(
        c_.paths.dictionary.empty() ? dir / "myanmar_dictionary.txt" : std::filesystem::path(c_.paths.dictionary),
        *r.normalizer);
    r.stoplist = segment::load_stoplist(
        c_.paths.stopwords.empty() ? dir / "stopwords.txt" : std::filesystem::path(c_.paths.stopwords), *r.normalizer);
    r.emoji = segment::EmojiRanges::load(dir / "emoji_ranges.tsv");
    return r;
  }

  annotation::CharacteristicSet characteristics() const {
    return c_.paths.characteristics.empty() ? annotation::CharacteristicSet::shipped()
                                            : annotation::CharacteristicSet::load(c_.paths.characteristics);
  }

  // One lexicon is used as is; several are merged in order.
  lexicon::Lexicon load_lexicons(const encoding::Normalizer& normalizer) const {
    if (c_.paths.lexicons.empty()) throw UsageError("--lexicon is required");
    std::optional<lexicon::Lexicon> merged;
    for (const auto& path : c_.paths.lexicons) {
      auto loaded = lexicon::load_lexicon(path, std::filesystem::path(path).stem().string(), normalizer);
      merged = merged ? lexicon::merge_lexicons(*merged, loaded.lexicon).first : std::move(loaded.lexicon);
    }
    return *merged;
  }

  std::vector<corpus::CleanPost> corpus() const { return corpus::read_corpus(need(c_.paths.corpus, "--corpus")); }

  // post_id -> hate for every post whose labels resolve.
  std::unordered_map<std::string, bool> gold(std::size_t* unresolved = nullptr) const {
    const auto resolved = annotation::resolve_labels(annotation::read_labels_csv(need(c_.paths.labels, "--labels")));
    std::unordered_map<std::string, bool> out;
    for (const auto& f : resolved.labels) out[f.post_id] = *f.decision == annotation::Decision::Yes;
    if (unresolved) *unresolved = resolved.unresolved.size();
    return out;
  }

  models::Dataset dataset(std::size_t& unlabelled, std::size_t& unresolved) const {
    const auto labels = gold(&unresolved);
    models::Dataset d;
    unlabelled = 0;
    for (const auto& p : corpus()) {
      auto it = labels.find(p.post_id);
      if (it == labels.end()) {
        ++unlabelled;
        continue;
      }
      d.examples.push_back({p.post_id, p.tokens, it->second});
    }
    return d;
  }

  RunConfig c_;
  const Flags& f_;
  std::ostream& out_;
  std::ostream& err_;
};

void Runner::ingest() {
  const auto result = corpus::ingest(need(f_.in, "--in"));
  if (!f_.out.empty()) write_file_atomic(f_.out, corpus::posts_to_csv(result.posts));
  err_ << "ingest: " << result.report.accepted << " of " << result.report.rows << " rows accepted\n";
  emit("ingest", Json{{"ingest", result.report.to_json()}}, f_.report);
}

void Runner::clean() {
  const auto raw = corpus::ingest(need(f_.in, "--in"));
  const auto res = resources();
  const auto lex = load_lexicons(*res.normalizer);
  const lexicon::Matcher matcher(lex);
  corpus::CleanConfig config;
  config.min_syllables = c_.min_syllables;
  config.ratio_threshold = c_.ratio_threshold;
  config.detection_threshold = c_.detection_threshold;
  config.seed = seed();
  const auto result = corpus::clean_pipeline(raw.posts, matcher, config, res);
  corpus::write_corpus(need(f_.out, "--out"), result.posts);
  for (const auto& w : result.report.warnings) err_ << "clean: warning: " << w << "\n";
  err_ << "clean: " << result.posts.size() << " posts written to " << f_.out << "\n";
  emit("clean", Json{{"ingest", raw.report.to_json()}, {"pipeline", result.report.to_json()}}, f_.report);
}

void Runner::lexicon_merge() {
  if (f_.positional.size() < 2) throw UsageError("lexicon merge needs two or more lexicon files");
  const auto& normalizer = c_.paths.data_dir.empty() ? encoding::Normalizer::shipped()
                                                     : *resources().normalizer;
  std::optional<lexicon::Lexicon> merged;
  Json merges = Json::array();
  Json inputs = Json::array();
  for (const auto& path : f_.positional) {
    auto loaded = lexicon::load_lexicon(path, std::filesystem::path(path).stem().string(), normalizer);
    inputs.push_back({{"path", path}, {"terms", loaded.lexicon.size()}, {"duplicate_lines", loaded.duplicate_lines}});
    if (!merged) {
      merged = std::move(loaded.lexicon);
      continue;
    }
    auto [lex, report] = lexicon::merge_lexicons(*merged, loaded.lexicon);
    merges.push_back(report.to_json());
    merged = std::move(lex);
  }
  write_file_atomic(need(f_.out, "--out"), merged->to_tsv());
  err_ << "lexicon merge: " << merged->size() << " terms written to " << f_.out << "\n";
  emit("lexicon merge", Json{{"inputs", inputs}, {"merges", merges}, {"total_terms", merged->size()}}, f_.report);
}

void Runner::assign() {
  std::vector<std::string> ids;
  if (!f_.in.empty()) {
    for (const auto& line : split_lines(read_file(f_.in))) {
      const auto t = trim(line);
      if (!t.empty()) ids.emplace_back(t);
    }
  } else {
    for (const auto& p : corpus()) ids.push_back(p.post_id);
  }
  if (c_.annotators.empty()) throw UsageError("--annotators is required");
  annotation::AssignmentConfig config{c_.batch_size, c_.paired_rounds, seed()};
  const auto plan = annotation::make_assignments(c_.annotators, ids, config);
  write_file_atomic(need(f_.out, "--out"), plan.to_json().dump(2) + "\n");
  Json solo = Json::array();
  for (const auto& [a, posts] : plan.solo) solo.push_back({{"annotator", a}, {"posts", posts.size()}});
  Json pairs = Json::array();
  for (const auto& [a, b] : plan.pairs) pairs.push_back({a, b});
  emit("assign",
       Json{{"posts", ids.size()}, {"pairs", pairs}, {"paired_posts", plan.paired_post_count()}, {"solo", solo}},
       f_.report);
}

void Runner::agreement() {
  const auto records = annotation::read_labels_csv(need(c_.paths.labels, "--labels"));
  Json report;
  if (!c_.paths.plan.empty()) {
    const auto plan = annotation::AssignmentPlan::load(c_.paths.plan);
    const auto timeline = annotation::agreement_timeline(plan, records);
    if (f_.round) {
      if (*f_.round < 1 || *f_.round > static_cast<int>(plan.config.paired_rounds)) {
        throw UsageError("--round must be between 1 and " + std::to_string(plan.config.paired_rounds));
      }
      Json pairs = Json::array();
      for (std::size_t p = 0; p < plan.pairs.size(); ++p) {
        Json entry{{"annotators", {plan.pairs[p].first, plan.pairs[p].second}}};
        if (auto r = annotation::pair_round_agreement(plan, p, *f_.round, records)) {
          entry["complete"] = true;
          entry["agreement"] = r->agreement;
          entry["kappa"] = r->kappa;
          entry["disagreements"] = r->disagreements;
        } else {
          entry["complete"] = false;
        }
        pairs.push_back(std::move(entry));
      }
      report["round"] = *f_.round;
      report["pairs"] = std::move(pairs);
    }
    report["timeline"] = timeline.to_json();
  } else {
    if (!f_.round) throw UsageError("--round is required without --plan");
    Json pairs = Json::array();
    for (const auto& p : annotation::observed_pair_agreement(records, *f_.round)) pairs.push_back(p.to_json());
    report["round"] = *f_.round;
    report["pairs"] = std::move(pairs);
  }
  emit("agreement", std::move(report), f_.out);
}

void Runner::adjudicate() {
  const std::string& labels_path = need(c_.paths.labels, "--labels");
  if (!f_.post.empty()) {
    const auto decision = annotation::parse_decision(f_.decision);
    if (!decision) throw UsageError("--decision must be Yes or No");
    annotation::LabelStore store(labels_path);
    std::vector<annotation::LabelRecord> pair;
    int round = 0;
    for (const auto& r : store.snapshot()) {
      if (r.post_id == f_.post && r.annotator_id != annotation::kAdjudicatedId) {
        pair.push_back(r);
        round = std::max(round, r.round);
      }
    }
    const auto final_label = annotation::adjudicate(f_.post, pair, *decision, comma_list(f_.characteristic_list));
    annotation::LabelRecord rec{f_.post, std::string(annotation::kAdjudicatedId), round, *decision,
                                final_label.characteristics, annotation::utc_now()};
    if (auto problem = annotation::label_problem(rec, characteristics()); !problem.empty()) {
      throw Error(ErrorCode::InvalidArgument, "ruling for " + f_.post + ": " + problem);
    }
    store.upsert(rec);
    emit("adjudicate", Json{{"final", final_label.to_json()}}, f_.report);
    return;
  }
  const auto records = annotation::read_labels_csv(labels_path);
  const auto resolved = annotation::resolve_labels(records);
  std::unordered_map<std::string, std::pair<int, std::string>> meta;  // max round, latest timestamp
  for (const auto& r : records) {
    auto& m = meta[r.post_id];
    m.first = std::max(m.first, r.round);
    m.second = std::max(m.second, r.timestamp);
  }
  std::vector<annotation::LabelRecord> final_records;
  std::map<std::string, std::size_t> status_counts;
  for (const auto& f : resolved.labels) {
    ++status_counts[std::string(annotation::to_string(f.status))];
    const auto& m = meta.at(f.post_id);
    final_records.push_back({f.post_id, "final", m.first, *f.decision, f.characteristics, m.second});
  }
  if (!f_.out.empty()) write_file_atomic(f_.out, annotation::labels_to_csv(final_records));
  Json counts = Json::object();
  for (const auto& [k, v] : status_counts) counts[k] = v;
  Json dist = Json::array();
  for (const auto& [name, n] : annotation::characteristics_distribution(resolved.labels)) {
    dist.push_back({{"characteristic", name}, {"count", n}});
  }
  emit("adjudicate",
       Json{{"resolved", resolved.labels.size()},
            {"status_counts", counts},
            {"needs_facilitator", resolved.unresolved},
            {"characteristics", dist}},
       f_.report);
}

void Runner::train() {
  std::size_t unlabelled = 0, unresolved = 0;
  const auto data = dataset(unlabelled, unresolved);
  if (unlabelled) err_ << "train: " << unlabelled << " corpus posts have no resolved label and are skipped\n";
  const auto counts = data.class_counts();
  Json report;
  report["data"] = {{"examples", data.size()}, {"hate", counts[1]}, {"not_hate", counts[0]},
                    {"unlabelled_posts", unlabelled}, {"unresolved_labels", unresolved}};
  const std::uint64_t s = seed();
  models::ModelSpec spec = c_.model;
  const std::size_t k = c_.cv ? c_.cv : 5;
  if (c_.grid) {
    const auto grid = models::grid_search(data, models::default_grid(spec), k, s, c_.oversample);
    spec = grid.best_spec();
    report["grid_search"] = grid.to_json();
  }
  if (c_.cv) {
    const auto cv = models::cross_validate(data, spec, c_.cv, s, c_.oversample);
    report["cross_validation"] = cv.to_json();
  }
  const auto model = models::train_model(spec, data, s, c_.oversample);
  const std::string path = f_.out.empty() ? c_.paths.models : f_.out;
  model.save(need(path, "--out"));
  report["model"] = {{"path", path}, {"spec", spec.to_json()}, {"oversampled", c_.oversample}};
  if (const auto* svm = std::get_if<models::SvmParams>(&model.params)) report["model"]["objective_trace"] = svm->objective_trace;
  if (const auto* ft = std::get_if<models::FastTextParams>(&model.params)) report["model"]["loss_trace"] = ft->loss_trace;
  err_ << "train: " << models::to_string(spec.type) << " model written to " << path << "\n";
  emit("train", std::move(report), f_.report);
}

void Runner::evaluate() {
  const auto model = models::ModelArtifact::load(need(f_.model_path.empty() ? c_.paths.models : f_.model_path, "--model"));
  const auto labels = gold();
  std::vector<std::pair<std::string, bool>> predictions, truth;
  for (const auto& p : corpus()) {
    auto it = labels.find(p.post_id);
    if (it == labels.end()) continue;
    predictions.emplace_back(p.post_id, models::predict(model, p.tokens).hate);
    truth.emplace_back(p.post_id, it->second);
  }
  const auto report = models::evaluate(predictions, truth);
  emit("evaluate", Json{{"model_type", models::to_string(model.type())}, {"report", report.to_json()}}, f_.out);
}

void Runner::predict() {
  const auto model = models::ModelArtifact::load(need(f_.model_path.empty() ? c_.paths.models : f_.model_path, "--model"));
  const auto posts = corpus();
  std::vector<review::ReviewItem> items;
  if (!c_.paths.lexicons.empty()) {
    const auto lex = load_lexicons(*resources().normalizer);
    items = review::infer_batch(model, posts, lexicon::Matcher(lex));
  } else {
    items = review::infer_batch(model, posts);
  }
  std::string jsonl;
  std::size_t positive = 0;
  for (const auto& item : items) {
    jsonl += review::to_json(item).dump() + "\n";
    positive += item.model_label ? 1 : 0;
  }
  write_file_atomic(need(f_.out, "--out"), jsonl);
  emit("predict", Json{{"items", items.size()}, {"predicted_hate", positive}, {"out", f_.out}}, f_.report);
}

std::vector<review::ReviewItem> read_items(const std::string& path) {
  std::vector<review::ReviewItem> items;
  std::size_t line_no = 0;
  for (const auto& line : split_lines(read_file(path))) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      items.push_back(review::review_item_from_json(Json::parse(line)));
    } catch (const Json::parse_error& e) {
      throw Error(ErrorCode::ParseError, path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return items;
}

void Runner::review_sample() {
  const auto items = read_items(need(f_.items, "--items"));
  review::SampleStrategy strategy;
  try {
    strategy = review::parse_sample_strategy(need(f_.strategy, "--strategy"));
  } catch (const Error&) {
    throw UsageError("--strategy must be uncertainty, random or top_positive");
  }
  if (!f_.n) throw UsageError("--n is required");
  const std::uint64_t s = strategy == review::SampleStrategy::Random ? seed() : c_.seed.value_or(0);
  const auto sample = review::sample_for_review(items, strategy, *f_.n, s);
  std::string jsonl;
  for (const auto& item : sample) jsonl += review::to_json(item).dump() + "\n";
  write_file_atomic(need(f_.out, "--out"), jsonl);
  Json ids = Json::array();
  for (const auto& item : sample) ids.push_back(item.post_id);
  emit("review sample", Json{{"strategy", review::to_string(strategy)}, {"n", sample.size()}, {"post_ids", ids}},
       f_.report);
}

void Runner::review_report() {
  auto items = read_items(need(f_.items, "--items"));
  review::attach_expert_labels(items, gold());
  const auto analysis = review::disagreement_report(items);
  emit("review report", Json{{"analysis", analysis.to_json()}}, f_.out);
}

void Runner::serve() {
  if (!f_.port) throw UsageError("--port is required");
  const std::string& plan_path = need(c_.paths.plan, "--plan");
  const std::string& labels_path = need(c_.paths.labels, "--labels");
  std::filesystem::path accounts_path = c_.paths.accounts;
  if (accounts_path.empty()) accounts_path = std::filesystem::path(plan_path).parent_path() / "users.json";
  auto plan = annotation::AssignmentPlan::load(plan_path);
  auto accounts = server::load_accounts(accounts_path);
  std::unordered_map<std::string, server::PostInfo> posts;
  if (!c_.paths.corpus.empty()) {
    for (const auto& p : corpus::read_corpus(c_.paths.corpus)) posts[p.post_id] = {text::encode_utf8(p.text), p.url};
  }
  auto store = std::make_shared<annotation::LabelStore>(labels_path);
  server::AnnotationService service(std::move(plan), store, std::move(accounts), std::move(posts), characteristics());
  server::HttpServer http(service);
  const int port = http.bind(f_.host, *f_.port);
  if (port < 0) throw Error(ErrorCode::InvalidArgument, "cannot bind " + f_.host + ":" + std::to_string(*f_.port));
  g_server = &http;
  std::signal(SIGINT, handle_stop_signal);
  std::signal(SIGTERM, handle_stop_signal);
  err_ << "serve: listening on http://" << f_.host << ":" << port << "\n" << std::flush;
  const bool ok = http.listen();
  g_server = nullptr;
  if (!ok) throw Error(ErrorCode::InvalidArgument, "listener on port " + std::to_string(port) + " failed");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Burmese hate speech toolkit", "hatelab"};
  app.require_subcommand(1);
  Flags f;

  auto seed_opt = [&](CLI::App* sub) { sub->add_option("--seed", f.seed, "Random seed"); };
  auto report_opt = [&](CLI::App* sub) { sub->add_option("--report", f.report, "Write the JSON report here"); };

  auto* ingest = app.add_subcommand("ingest", "Validate a posts CSV");
  ingest->add_option("--in", f.in, "Posts CSV")->required();
  ingest->add_option("--out", f.out, "Write accepted rows as CSV");
  report_opt(ingest);

  auto* clean = app.add_subcommand("clean", "Normalize, filter, shuffle and tokenize posts");
  clean->add_option("--in", f.in, "Posts CSV")->required();
  clean->add_option("--lexicon", f.lexicons, "Lexicon TSV (repeatable; merged in order)");
  clean->add_option("--out", f.out, "Corpus JSONL")->required();
  clean->add_option("--min-syllables", f.min_syllables);
  clean->add_option("--ratio-threshold", f.ratio_threshold);
  clean->add_option("--detection-threshold", f.detection_threshold);
  clean->add_option("--data-dir", f.data_dir, "Rule tables and word lists");
  clean->add_option("--dictionary", f.dictionary);
  clean->add_option("--stopwords", f.stopwords);
  seed_opt(clean);
  report_opt(clean);

  auto* lexicon_cmd = app.add_subcommand("lexicon", "Lexicon tools");
  lexicon_cmd->require_subcommand(1);
  auto* merge = lexicon_cmd->add_subcommand("merge", "Merge lexicon TSV files");
  merge->add_option("files", f.positional, "Lexicon TSV files")->required();
  merge->add_option("--out", f.out, "Merged lexicon TSV")->required();
  merge->add_option("--data-dir", f.data_dir);
  report_opt(merge);

  auto* assign = app.add_subcommand("assign", "Pair annotators and split posts into batches");
  assign->add_option("--corpus", f.corpus, "Corpus JSONL (post order is kept)");
  assign->add_option("--in", f.in, "Alternatively, one post id per line");
  assign->add_option("--annotators", f.annotators, "Comma-separated annotator ids");
  assign->add_option("--batch-size", f.batch_size);
  assign->add_option("--rounds", f.rounds, "Paired rounds");
  assign->add_option("--out", f.out, "Plan JSON")->required();
  seed_opt(assign);
  report_opt(assign);

  auto* agreement = app.add_subcommand("agreement", "Per-pair agreement");
  agreement->add_option("--labels", f.labels, "Labels CSV");
  agreement->add_option("--round", f.round);
  agreement->add_option("--plan", f.plan, "Plan JSON");
  agreement->add_option("--out", f.out);

  auto* adjudicate = app.add_subcommand("adjudicate", "Resolve final labels or record a facilitator ruling");
  adjudicate->add_option("--labels", f.labels, "Labels CSV");
  adjudicate->add_option("--out", f.out, "Final labels CSV");
  adjudicate->add_option("--post", f.post, "Post to rule on");
  adjudicate->add_option("--decision", f.decision, "Yes or No");
  adjudicate->add_option("--characteristics", f.characteristic_list, "Comma-separated characteristics");
  adjudicate->add_option("--characteristics-file", f.characteristics);
  report_opt(adjudicate);

  auto* train = app.add_subcommand("train", "Train a classifier");
  train->add_option("--model", f.model_type, "svm, brf or fasttext");
  train->add_flag("--oversample", f.oversample, "Oversample the minority class in training data");
  train->add_flag("--grid", f.grid, "Grid search feature settings first");
  train->add_option("--corpus", f.corpus);
  train->add_option("--labels", f.labels, "Labels CSV (resolved per post)");
  train->add_option("--cv", f.cv, "Cross-validation folds");
  train->add_option("--out", f.out, "Model JSON");
  train->add_option("--lambda", f.lambda);
  train->add_option("--epochs", f.epochs);
  train->add_option("--trees", f.trees);
  train->add_option("--max-depth", f.max_depth);
  train->add_option("--features-per-split", f.features_per_split);
  train->add_option("--min-samples-split", f.min_samples_split);
  train->add_option("--dim", f.dim);
  train->add_option("--lr", f.lr);
  train->add_option("--word-ngrams", f.word_ngrams);
  train->add_option("--char-min", f.char_min);
  train->add_option("--char-max", f.char_max);
  train->add_option("--buckets", f.buckets);
  train->add_option("--ngrams", f.ngrams, "e.g. word:1-2,char:2-5");
  train->add_option("--min-count", f.min_count);
  train->add_option("--weighting", f.weighting, "tf or tfidf");
  seed_opt(train);
  report_opt(train);

  auto* evaluate = app.add_subcommand("evaluate", "Score a model against labels");
  evaluate->add_option("--model", f.model_path, "Model JSON");
  evaluate->add_option("--corpus", f.corpus);
  evaluate->add_option("--labels", f.labels);
  evaluate->add_option("--out", f.out);

  auto* predict = app.add_subcommand("predict", "Label fresh posts for review");
  predict->add_option("--model", f.model_path, "Model JSON");
  predict->add_option("--corpus", f.corpus);
  predict->add_option("--lexicon", f.lexicons, "Recount lexicon hits with these lexicons");
  predict->add_option("--out", f.out, "Review items JSONL")->required();
  report_opt(predict);

  auto* review_cmd = app.add_subcommand("review", "Expert review loop");
  review_cmd->require_subcommand(1);
  auto* sample = review_cmd->add_subcommand("sample", "Select items for expert review");
  sample->add_option("--items", f.items, "Review items JSONL")->required();
  sample->add_option("--strategy", f.strategy, "uncertainty, random or top_positive")->required();
  sample->add_option("--n", f.n)->required();
  sample->add_option("--out", f.out, "Sample JSONL")->required();
  seed_opt(sample);
  report_opt(sample);
  auto* report = review_cmd->add_subcommand("report", "Categorize model errors against expert labels");
  report->add_option("--items", f.items, "Review items JSONL")->required();
  report->add_option("--labels", f.labels, "Expert labels CSV");
  report->add_option("--out", f.out);

  auto* serve = app.add_subcommand("serve", "Run the annotation HTTP API");
  serve->add_option("--port", f.port)->required();
  serve->add_option("--host", f.host);
  serve->add_option("--labels", f.labels, "Labels CSV (created if missing)");
  serve->add_option("--plan", f.plan, "Plan JSON");
  serve->add_option("--users", f.users, "Accounts JSON (default: users.json next to the plan)");
  serve->add_option("--corpus", f.corpus, "Corpus JSONL for post text and links");
  serve->add_option("--characteristics-file", f.characteristics);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "hatelab: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    RunConfig config;
    if (const char* path = std::getenv("HATELAB_CONFIG"); path && *path) {
      try {
        config = RunConfig::from_json(Json::parse(read_file(path)));
      } catch (const Json::parse_error& e) {
        throw Error(ErrorCode::ParseError, std::string(path) + ": " + e.what());
      }
    }
    apply(f, config);
    Runner runner(std::move(config), f, out, err);
    if (ingest->parsed()) runner.ingest();
    else if (clean->parsed()) runner.clean();
    else if (merge->parsed()) runner.lexicon_merge();
    else if (assign->parsed()) runner.assign();
    else if (agreement->parsed()) runner.agreement();
    else if (adjudicate->parsed()) runner.adjudicate();
    else if (train->parsed()) runner.train();
    else if (evaluate->parsed()) runner.evaluate();
    else if (predict->parsed()) runner.predict();
    else if (sample->parsed()) runner.review_sample();
    else if (report->parsed()) runner.review_report();
    else if (serve->parsed()) runner.serve();
    return kExitOk;
  } catch (const UsageError& e) {
    err << "hatelab: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "hatelab: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "hatelab: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace hatelab::cli
