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

#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <sys/wait.h>

#include "fixtures/posts.hpp"
#include "hatelab/annotation/labels.hpp"
#include "hatelab/cli/cli.hpp"
#include "hatelab/corpus/pipeline.hpp"
#include "hatelab/models/model.hpp"
#include "test_support.hpp"

using namespace hatelab;
using hatelab::testing::u32;

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Result hatelab_run(std::vector<std::string> args) {
  args.insert(args.begin(), "hatelab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

struct ConfigEnv {
  explicit ConfigEnv(const std::string& path) { ::setenv("HATELAB_CONFIG", path.c_str(), 1); }
  ~ConfigEnv() { ::unsetenv("HATELAB_CONFIG"); }
};

int exit_status(const std::string& command) {
  const int raw = std::system(command.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

}  // namespace

TEST_CASE("exit codes") {
  testing::TempDir dir;
  CHECK(hatelab_run({"--help"}).code == cli::kExitOk);
  CHECK(hatelab_run({}).code == cli::kExitUsage);
  CHECK(hatelab_run({"frobnicate"}).code == cli::kExitUsage);
  CHECK(hatelab_run({"clean", "--out", (dir / "c.jsonl").string()}).code == cli::kExitUsage);

  const auto posts = dir.write("posts.csv", corpus::posts_to_csv(testing::make_posts(50, 1)));
  // Missing seed is a usage error.
  CHECK(hatelab_run({"clean", "--in", posts.string(), "--out", (dir / "c.jsonl").string()}).code == cli::kExitUsage);
  // Unreadable input is a data error.
  const auto missing = hatelab_run({"ingest", "--in", (dir / "nope.csv").string()});
  CHECK(missing.code == cli::kExitData);
  CHECK(missing.err.find("FileUnreadable") != std::string::npos);
  const auto bad_header = dir.write("bad.csv", "id,text\n1,x\n");
  CHECK(hatelab_run({"ingest", "--in", bad_header.string()}).code == cli::kExitData);

  const auto ok = hatelab_run({"ingest", "--in", posts.string()});
  REQUIRE(ok.code == cli::kExitOk);
  CHECK(ok.json()["command"] == "ingest");
  CHECK(ok.json()["ingest"]["rows"].get<std::size_t>() >= 50);

  const std::string bin = HATELAB_CLI_PATH;
  CHECK(exit_status(bin + " --help > /dev/null") == 0);
  CHECK(exit_status(bin + " assign --out /dev/null 2> /dev/null") == 1);
  CHECK(exit_status(bin + " ingest --in " + (dir / "nope.csv").string() + " 2> /dev/null") == 2);
}

TEST_CASE("config file supplies defaults and flags override it") {
  testing::TempDir dir;
  const auto posts = dir.write("posts.csv", corpus::posts_to_csv(testing::make_posts(300, 2)));
  const auto lex = dir.write("lex.tsv", "ကလေး\n");
  const auto cfg = dir.write("config.json", R"({"seed": 11, "pipeline": {"min_syllables": 4}, "paths": {"lexicons": [")" +
                                                lex.string() + R"("]}})");
  ConfigEnv env(cfg.string());

  const auto a = hatelab_run({"clean", "--in", posts.string(), "--out", (dir / "a.jsonl").string()});
  REQUIRE(a.code == cli::kExitOk);
  CHECK(a.json()["config"]["seed"] == 11);
  CHECK(a.json()["pipeline"]["seed"] == 11);
  for (const auto& p : corpus::read_corpus(dir / "a.jsonl")) CHECK(p.syllable_count >= 4);

  const auto b = hatelab_run({"clean", "--in", posts.string(), "--out", (dir / "b.jsonl").string(), "--seed", "12",
                              "--min-syllables", "3"});
  REQUIRE(b.code == cli::kExitOk);
  CHECK(b.json()["config"]["seed"] == 12);
  CHECK(b.json()["config"]["pipeline"]["min_syllables"] == 3);

  dir.write("broken.json", "{not json");
  ConfigEnv broken((dir / "broken.json").string());
  CHECK(hatelab_run({"clean", "--in", posts.string(), "--out", (dir / "c.jsonl").string(), "--seed", "1"}).code ==
        cli::kExitData);
}

TEST_CASE("lexicon merge and assignment commands") {
  testing::TempDir dir;
  const auto a = dir.write("hatebase.tsv", "ka\nkala\n");
  const auto b = dir.write("custom.tsv", "kala\nlu\n");
  const auto merged = hatelab_run({"lexicon", "merge", a.string(), b.string(), "--out", (dir / "m.tsv").string()});
  REQUIRE(merged.code == cli::kExitOk);
  CHECK(merged.json()["total_terms"] == 3);
  CHECK(merged.json()["merges"][0]["exact_duplicates"].dump().find("kala") != std::string::npos);
  CHECK(hatelab_run({"lexicon", "merge", a.string(), "--out", (dir / "m.tsv").string()}).code == cli::kExitUsage);

  std::string ids;
  for (int i = 0; i < 30; ++i) ids += "p" + std::to_string(i) + "\n";
  const auto id_file = dir.write("ids.txt", ids);
  const auto plan = hatelab_run({"assign", "--in", id_file.string(), "--annotators", "a,b,c,d", "--batch-size", "5",
                                 "--rounds", "2", "--seed", "3", "--out", (dir / "plan.json").string()});
  REQUIRE(plan.code == cli::kExitOk);
  CHECK(plan.json()["paired_posts"] == 20);
  CHECK(annotation::AssignmentPlan::load(dir / "plan.json").pairs.size() == 2);
  CHECK(hatelab_run({"assign", "--in", id_file.string(), "--annotators", "a,b,c", "--seed", "3", "--batch-size", "5",
                     "--rounds", "1", "--out", (dir / "p2.json").string()})
            .code == cli::kExitData);
}

TEST_CASE("clean, label, train, evaluate, predict and review chain") {
  testing::TempDir dir;
  const auto posts = dir.write("posts.csv", corpus::posts_to_csv(testing::make_posts(700, 5)));
  const auto lex = dir.write("lex.tsv", "လူမျိုး\tcustom\n");
  const auto corpus_path = dir / "corpus.jsonl";
  const auto clean = hatelab_run({"clean", "--in", posts.string(), "--lexicon", lex.string(), "--seed", "7", "--out",
                                  corpus_path.string(), "--report", (dir / "clean.json").string()});
  REQUIRE(clean.code == cli::kExitOk);
  CHECK(clean.out.empty());
  CHECK(Json::parse(read_file(dir / "clean.json"))["command"] == "clean");
  const auto again = hatelab_run({"clean", "--in", posts.string(), "--lexicon", lex.string(), "--seed", "7", "--out",
                                  (dir / "again.jsonl").string(), "--report", (dir / "again.json").string()});
  CHECK(read_file(corpus_path) == read_file(dir / "again.jsonl"));
  CHECK(read_file(dir / "clean.json") == read_file(dir / "again.json"));

  // Two annotators agree everywhere except on the first post; hate = mentions the lexicon term.
  const auto corpus = corpus::read_corpus(corpus_path);
  REQUIRE(corpus.size() > 200);
  std::vector<annotation::LabelRecord> labels;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const bool hate = !corpus[i].lexicon_hits.empty();
    for (const char* who : {"ann1", "ann2"}) {
      const bool d = (i == 0 && std::string(who) == "ann2") ? !hate : hate;
      labels.push_back({corpus[i].post_id, who, 1, d ? annotation::Decision::Yes : annotation::Decision::No,
                        d ? std::vector<std::string>{"ethnicity"} : std::vector<std::string>{},
                        "2021-03-01T00:00:00Z"});
    }
  }
  const auto labels_path = dir.write("labels.csv", annotation::labels_to_csv(labels));

  const auto agreement = hatelab_run({"agreement", "--labels", labels_path.string(), "--round", "1"});
  REQUIRE(agreement.code == cli::kExitOk);
  CHECK(agreement.json()["pairs"][0]["shared"] == corpus.size());

  const auto final_path = dir / "final.csv";
  const auto resolved = hatelab_run({"adjudicate", "--labels", labels_path.string(), "--out", final_path.string()});
  REQUIRE(resolved.code == cli::kExitOk);
  CHECK(resolved.json()["needs_facilitator"].size() == 1);
  const auto ruling = hatelab_run({"adjudicate", "--labels", labels_path.string(), "--post", corpus[0].post_id,
                                   "--decision", corpus[0].lexicon_hits.empty() ? "No" : "Yes"});
  REQUIRE(ruling.code == cli::kExitOk);
  CHECK(hatelab_run({"adjudicate", "--labels", labels_path.string(), "--out", final_path.string()})
            .json()["needs_facilitator"]
            .empty());

  const auto model_path = dir / "svm.json";
  const auto train = hatelab_run({"train", "--model", "svm", "--corpus", corpus_path.string(), "--labels",
                                  final_path.string(), "--seed", "1", "--cv", "3", "--oversample", "--out",
                                  model_path.string()});
  REQUIRE(train.code == cli::kExitOk);
  CHECK(train.json()["data"]["examples"] == corpus.size());
  CHECK(train.json()["cross_validation"]["pooled"]["macro"]["f1"].get<double>() > 0.9);
  CHECK(models::ModelArtifact::load(model_path).type() == models::ModelType::Svm);

  const auto eval = hatelab_run({"evaluate", "--model", model_path.string(), "--corpus", corpus_path.string(),
                                 "--labels", final_path.string()});
  REQUIRE(eval.code == cli::kExitOk);
  CHECK(eval.json()["report"]["macro"]["f1"].get<double>() > 0.9);

  const auto items = dir / "items.jsonl";
  const auto pred = hatelab_run({"predict", "--model", model_path.string(), "--corpus", corpus_path.string(),
                                 "--out", items.string()});
  REQUIRE(pred.code == cli::kExitOk);
  CHECK(pred.json()["items"] == corpus.size());

  const auto sample = hatelab_run({"review", "sample", "--items", items.string(), "--strategy", "uncertainty", "--n",
                                   "10", "--out", (dir / "sample.jsonl").string()});
  REQUIRE(sample.code == cli::kExitOk);
  CHECK(sample.json()["post_ids"].size() == 10);
  CHECK(hatelab_run({"review", "sample", "--items", items.string(), "--strategy", "random", "--n", "10", "--out",
                     (dir / "s.jsonl").string()})
            .code == cli::kExitUsage);
  CHECK(hatelab_run({"review", "sample", "--items", items.string(), "--strategy", "uncertainty", "--n", "100000",
                     "--out", (dir / "s.jsonl").string()})
            .code == cli::kExitData);

  const auto report = hatelab_run({"review", "report", "--items", items.string(), "--labels", final_path.string()});
  REQUIRE(report.code == cli::kExitOk);
  CHECK(report.json()["analysis"]["total"] == corpus.size());

  // A FastText model trained through the CLI also loads back.
  const auto ft = hatelab_run({"train", "--model", "fasttext", "--corpus", corpus_path.string(), "--labels",
                               final_path.string(), "--seed", "2", "--dim", "8", "--epochs", "3", "--buckets", "65536",
                               "--out", (dir / "ft.json").string()});
  REQUIRE(ft.code == cli::kExitOk);
  CHECK(ft.json()["model"]["loss_trace"].size() == 3);
  CHECK(hatelab_run({"train", "--model", "cnn", "--corpus", corpus_path.string(), "--labels", final_path.string(),
                     "--seed", "2", "--out", (dir / "x.json").string()})
            .code == cli::kExitUsage);
}
