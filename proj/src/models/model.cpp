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

#include "hatelab/models/model.hpp"

#include <cmath>

#include "hatelab/util/error.hpp"
#include "hatelab/util/io.hpp"
#include "hatelab/util/random.hpp"

namespace hatelab::models {

using features::SparseVector;

namespace {

constexpr std::uint64_t kSvmStream = 2;
constexpr std::uint64_t kBrfStream = 3;
constexpr std::uint64_t kFastTextStream = 4;
constexpr std::uint64_t kOversampleStream = 1;

Json sparse_json(const std::vector<double>& v) { return Json(v); }

Json hyper_svm(const SvmHyper& h) { return Json{{"lambda", h.lambda}, {"epochs", h.epochs}}; }
Json hyper_brf(const BrfHyper& h) {
  return Json{{"n_trees", h.n_trees},
              {"max_depth", h.max_depth},
              {"features_per_split", h.features_per_split},
              {"min_samples_split", h.min_samples_split}};
}
Json hyper_fasttext(const FastTextHyper& h) {
  return Json{{"dim", h.dim},         {"lr", h.lr},           {"epochs", h.epochs}, {"word_ngrams", h.word_ngrams},
              {"char_min", h.char_min}, {"char_max", h.char_max}, {"buckets", h.buckets}};
}

[[noreturn]] void bad_artifact(const std::string& what) {
  throw Error(ErrorCode::FeatureConfigMismatch, "model artifact " + what);
}

}  // namespace

std::string_view to_string(ModelType type) {
  switch (type) {
    case ModelType::Svm: return "svm";
    case ModelType::Brf: return "brf";
    case ModelType::FastText: return "fasttext";
  }
  return "svm";
}

ModelType parse_model_type(std::string_view text) {
  if (text == "svm") return ModelType::Svm;
  if (text == "brf") return ModelType::Brf;
  if (text == "fasttext") return ModelType::FastText;
  throw Error(ErrorCode::InvalidArgument, "unknown model type '" + std::string(text) + "'");
}

Json ModelSpec::hyper_json() const {
  switch (type) {
    case ModelType::Svm: return hyper_svm(svm);
    case ModelType::Brf: return hyper_brf(brf);
    case ModelType::FastText: return hyper_fasttext(fasttext);
  }
  return Json::object();
}

Json ModelSpec::to_json() const {
  Json j;
  j["model_type"] = to_string(type);
  j["hyperparameters"] = hyper_json();
  if (type != ModelType::FastText) j["features"] = features.to_json();
  return j;
}

ModelSpec ModelSpec::from_json(const Json& j) {
  ModelSpec s;
  s.type = parse_model_type(j.at("model_type").get<std::string>());
  if (j.contains("features")) s.features = features::FeatureConfig::from_json(j.at("features"));
  const Json h = j.value("hyperparameters", Json::object());
  switch (s.type) {
    case ModelType::Svm:
      s.svm.lambda = h.value("lambda", s.svm.lambda);
      s.svm.epochs = h.value("epochs", s.svm.epochs);
      break;
    case ModelType::Brf:
      s.brf.n_trees = h.value("n_trees", s.brf.n_trees);
      s.brf.max_depth = h.value("max_depth", s.brf.max_depth);
      s.brf.features_per_split = h.value("features_per_split", s.brf.features_per_split);
      s.brf.min_samples_split = h.value("min_samples_split", s.brf.min_samples_split);
      break;
    case ModelType::FastText:
      s.fasttext.dim = h.value("dim", s.fasttext.dim);
      s.fasttext.lr = h.value("lr", s.fasttext.lr);
      s.fasttext.epochs = h.value("epochs", s.fasttext.epochs);
      s.fasttext.word_ngrams = h.value("word_ngrams", s.fasttext.word_ngrams);
      s.fasttext.char_min = h.value("char_min", s.fasttext.char_min);
      s.fasttext.char_max = h.value("char_max", s.fasttext.char_max);
      s.fasttext.buckets = h.value("buckets", s.fasttext.buckets);
      break;
  }
  return s;
}

std::uint64_t ModelArtifact::feature_fingerprint() const {
  if (spec.type == ModelType::FastText) {
    return features::stable_hash(hyper_fasttext(spec.fasttext).dump()) ^ 0x66617374ULL;
  }
  std::uint64_t h = spec.features.fingerprint();
  if (vocab) {
    h = derive_seed(h, vocab->size());
    h = derive_seed(h, vocab->documents());
    if (vocab->size() > 0) {
      h ^= features::stable_hash(vocab->terms().front()) ^ mix_seed(features::stable_hash(vocab->terms().back()));
    }
  }
  return h;
}

Json ModelArtifact::to_json() const {
  Json j;
  j["format"] = "hatelab-model";
  j["version"] = version;
  j["model_type"] = to_string(spec.type);
  j["hyperparameters"] = spec.hyper_json();
  j["seed"] = seed;
  if (spec.type != ModelType::FastText) {
    j["features"] = spec.features.to_json();
    if (vocab) j["vocab"] = vocab->to_json();
  } else {
    j["features"] = {{"buckets", spec.fasttext.buckets}};
  }
  j["training"] = {{"examples", training.examples},
                   {"hate", training.hate},
                   {"not_hate", training.not_hate},
                   {"oversampled", training.oversampled}};
  Json params;
  if (const auto* s = std::get_if<SvmParams>(&this->params)) {
    params["bias"] = s->bias;
    params["weights"] = sparse_json(s->weights);
    params["objective_trace"] = s->objective_trace;
  } else if (const auto* b = std::get_if<BrfParams>(&this->params)) {
    params["train_ids"] = b->train_ids;
    std::vector<int> labels(b->train_labels.begin(), b->train_labels.end());
    params["train_labels"] = labels;
    params["trees"] = Json::array();
    for (const auto& t : b->trees) {
      Json tree;
      std::vector<std::int32_t> feature, left, right;
      std::vector<double> threshold;
      std::vector<int> vote;
      for (const auto& n : t.nodes) {
        feature.push_back(n.feature);
        threshold.push_back(n.threshold);
        left.push_back(n.left);
        right.push_back(n.right);
        vote.push_back(n.vote ? 1 : 0);
      }
      tree["feature"] = feature;
      tree["threshold"] = threshold;
      tree["left"] = left;
      tree["right"] = right;
      tree["vote"] = vote;
      tree["samples"] = t.samples;
      params["trees"].push_back(std::move(tree));
    }
  } else if (const auto* f = std::get_if<FastTextParams>(&this->params)) {
    params["dim"] = f->dim;
    params["output_bias"] = f->output_bias;
    params["output"] = f->output;
    params["row_buckets"] = f->row_buckets;
    params["rows"] = f->rows;
    params["loss_trace"] = f->loss_trace;
  }
  j["parameters"] = std::move(params);
  return j;
}

ModelArtifact ModelArtifact::from_json(const Json& j) {
  try {
    if (j.value("format", std::string()) != "hatelab-model") bad_artifact("is not a hatelab model");
    ModelArtifact a;
    a.version = j.at("version").get<int>();
    if (a.version != kArtifactVersion) bad_artifact("has unsupported version " + std::to_string(a.version));
    Json spec_json{{"model_type", j.at("model_type")}, {"hyperparameters", j.at("hyperparameters")}};
    if (j.at("model_type") != "fasttext") spec_json["features"] = j.at("features");
    a.spec = ModelSpec::from_json(spec_json);
    a.seed = j.at("seed").get<std::uint64_t>();
    const Json& t = j.at("training");
    a.training.examples = t.at("examples").get<std::size_t>();
    a.training.hate = t.at("hate").get<std::size_t>();
    a.training.not_hate = t.at("not_hate").get<std::size_t>();
    a.training.oversampled = t.at("oversampled").get<bool>();
    const Json& p = j.at("parameters");
    switch (a.spec.type) {
      case ModelType::Svm: {
        a.vocab = features::Vocab::from_json(j.at("vocab"));
        SvmParams s;
        s.bias = p.at("bias").get<double>();
        s.weights = p.at("weights").get<std::vector<double>>();
        s.objective_trace = p.at("objective_trace").get<std::vector<double>>();
        if (s.weights.size() != a.vocab->size()) bad_artifact("weights do not match the vocabulary");
        a.params = std::move(s);
        break;
      }
      case ModelType::Brf: {
        a.vocab = features::Vocab::from_json(j.at("vocab"));
        BrfParams b;
        b.train_ids = p.at("train_ids").get<std::vector<std::string>>();
        for (int l : p.at("train_labels").get<std::vector<int>>()) b.train_labels.push_back(l != 0);
        for (const auto& tj : p.at("trees")) {
          Tree tree;
          const auto feature = tj.at("feature").get<std::vector<std::int32_t>>();
          const auto threshold = tj.at("threshold").get<std::vector<double>>();
          const auto left = tj.at("left").get<std::vector<std::int32_t>>();
          const auto right = tj.at("right").get<std::vector<std::int32_t>>();
          const auto vote = tj.at("vote").get<std::vector<int>>();
          const std::size_t n = feature.size();
          if (n == 0 || threshold.size() != n || left.size() != n || right.size() != n || vote.size() != n) {
            bad_artifact("has a malformed tree");
          }
          for (std::size_t i = 0; i < n; ++i) {
            TreeNode node{feature[i], threshold[i], left[i], right[i], vote[i] != 0};
            if (node.feature >= 0) {
              const auto in_range = [&](std::int32_t c) { return c > static_cast<std::int32_t>(i) && c < static_cast<std::int32_t>(n); };
              if (!in_range(node.left) || !in_range(node.right) ||
                  static_cast<std::size_t>(node.feature) >= a.vocab->size()) {
                bad_artifact("has a tree node out of range");
              }
            }
            tree.nodes.push_back(node);
          }
          tree.samples = tj.at("samples").get<std::vector<std::uint32_t>>();
          b.trees.push_back(std::move(tree));
        }
        a.params = std::move(b);
        break;
      }
      case ModelType::FastText: {
        FastTextParams f;
        f.dim = p.at("dim").get<std::size_t>();
        f.output_bias = p.at("output_bias").get<std::vector<float>>();
        f.output = p.at("output").get<std::vector<float>>();
        f.row_buckets = p.at("row_buckets").get<std::vector<std::uint32_t>>();
        f.rows = p.at("rows").get<std::vector<float>>();
        f.loss_trace = p.at("loss_trace").get<std::vector<double>>();
        if (f.dim != a.spec.fasttext.dim || f.output.size() != 2 * f.dim || f.output_bias.size() != 2 ||
            f.rows.size() != f.row_buckets.size() * f.dim) {
          bad_artifact("has inconsistent embedding shapes");
        }
        a.params = std::move(f);
        break;
      }
    }
    return a;
  } catch (const Json::exception& e) {
    bad_artifact(std::string("is malformed: ") + e.what());
  }
}

void ModelArtifact::save(const std::filesystem::path& path) const { write_file_atomic(path, to_json().dump() + "\n"); }

ModelArtifact ModelArtifact::load(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
  return from_json(j);
}

Featurized featurize(const ModelArtifact& model, const std::vector<std::u32string>& tokens) {
  Featurized f;
  f.fingerprint = model.feature_fingerprint();
  if (model.spec.type == ModelType::FastText) {
    f.vector = fasttext_inputs(tokens, model.spec.fasttext);
  } else {
    if (!model.vocab) bad_artifact("has no vocabulary");
    f.vector = model.vocab->vectorize(tokens);
  }
  return f;
}

Prediction predict(const ModelArtifact& model, const Featurized& input) {
  if (input.fingerprint != model.feature_fingerprint()) {
    throw Error(ErrorCode::FeatureConfigMismatch, "input was featurized for a different feature space");
  }
  Prediction out;
  if (const auto* s = std::get_if<SvmParams>(&model.params)) {
    if (!input.vector.index.empty() && input.vector.index.back() >= s->weights.size()) {
      throw Error(ErrorCode::FeatureConfigMismatch, "feature index beyond the model's weights");
    }
    const double margin = svm_margin(*s, input.vector);
    out.score = logistic(margin);
    out.hate = margin > 0.0;
  } else if (const auto* b = std::get_if<BrfParams>(&model.params)) {
    out.score = brf_score(*b, input.vector);
    out.hate = out.score > 0.5;
  } else if (const auto* f = std::get_if<FastTextParams>(&model.params)) {
    out.score = fasttext_score(*f, derive_seed(model.seed, kFastTextStream), input.vector);
    out.hate = out.score > 0.5;
  }
  return out;
}

Prediction predict(const ModelArtifact& model, const std::vector<std::u32string>& tokens) {
  return predict(model, featurize(model, tokens));
}

ModelArtifact train_model(const ModelSpec& spec, const Dataset& train, std::uint64_t seed, bool oversample) {
  const auto counts = train.class_counts();
  if (counts[0] == 0 || counts[1] == 0) throw Error(ErrorCode::SingleClass, "training data has a single class");

  ModelArtifact a;
  a.spec = spec;
  a.seed = seed;
  if (spec.type != ModelType::FastText) {
    std::vector<std::vector<std::u32string>> docs;
    docs.reserve(train.size());
    for (const auto& e : train.examples) docs.push_back(e.tokens);
    a.vocab = features::Vocab::build(docs, spec.features);
  }
  const Dataset data = oversample ? random_oversample(train, derive_seed(seed, kOversampleStream)) : train;
  const auto fitted = data.class_counts();
  a.training = {data.size(), fitted[1], fitted[0], oversample};

  std::vector<bool> y;
  y.reserve(data.size());
  for (const auto& e : data.examples) y.push_back(e.hate);

  if (spec.type == ModelType::FastText) {
    std::vector<SparseVector> inputs;
    inputs.reserve(data.size());
    for (const auto& e : data.examples) inputs.push_back(fasttext_inputs(e.tokens, spec.fasttext));
    a.params = train_fasttext(inputs, y, spec.fasttext, derive_seed(seed, kFastTextStream));
    return a;
  }
  std::vector<SparseVector> x;
  x.reserve(data.size());
  for (const auto& e : data.examples) x.push_back(a.vocab->vectorize(e.tokens));
  if (spec.type == ModelType::Svm) {
    a.params = train_svm(x, y, a.vocab->size(), spec.svm, derive_seed(seed, kSvmStream));
  } else {
    std::vector<std::string> ids;
    ids.reserve(data.size());
    for (const auto& e : data.examples) ids.push_back(e.id);
    a.params = train_brf(x, y, ids, a.vocab->size(), spec.brf, derive_seed(seed, kBrfStream));
  }
  return a;
}

}  // namespace hatelab::models
