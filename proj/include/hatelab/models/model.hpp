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
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hatelab/features/features.hpp"
#include "hatelab/models/dataset.hpp"
#include "hatelab/util/json.hpp"

namespace hatelab::models {

enum class ModelType { Svm, Brf, FastText };

std::string_view to_string(ModelType type);
ModelType parse_model_type(std::string_view text);  // throws Error(InvalidArgument)

struct SvmHyper {
  double lambda = 1e-4;
  int epochs = 10;
};

struct BrfHyper {
  std::size_t n_trees = 100;
  std::size_t max_depth = 0;           // 0 = grow until pure
  std::size_t features_per_split = 0;  // 0 = ceil(sqrt(V))
  std::size_t min_samples_split = 2;
};

struct FastTextHyper {
  std::size_t dim = 100;
  double lr = 0.1;
  int epochs = 25;
  int word_ngrams = 2;
  int char_min = 2;
  int char_max = 5;
  std::uint64_t buckets = 1'000'000;
};

// What to train: model type, its hyperparameters and (for SVM / BRF) the
// n-gram vocabulary settings.
struct ModelSpec {
  ModelType type = ModelType::Svm;
  features::FeatureConfig features;
  SvmHyper svm;
  BrfHyper brf;
  FastTextHyper fasttext;

  Json hyper_json() const;
  Json to_json() const;
  static ModelSpec from_json(const Json& j);
};

struct SvmParams {
  std::vector<double> weights;
  double bias = 0.0;
  std::vector<double> objective_trace;  // objective of the kept weights after each epoch
};

struct TreeNode {
  std::int32_t feature = -1;  // -1 = leaf
  double threshold = 0.0;     // go left when x[feature] <= threshold
  std::int32_t left = -1;
  std::int32_t right = -1;
  bool vote = false;  // leaf class
};

struct Tree {
  std::vector<TreeNode> nodes;
  std::vector<std::uint32_t> samples;  // bootstrap, as indices into BrfParams::train_ids
};

struct BrfParams {
  std::vector<Tree> trees;
  std::vector<std::string> train_ids;
  std::vector<bool> train_labels;
};

struct FastTextParams {
  std::size_t dim = 0;
  // Rows trained away from their initial value, sorted by bucket. Rows not
  // listed are regenerated from the seed.
  std::vector<std::uint32_t> row_buckets;
  std::vector<float> rows;        // row_buckets.size() x dim
  std::vector<float> output;      // 2 x dim, row 1 = hate
  std::vector<float> output_bias; // 2
  std::vector<double> loss_trace; // mean training loss per epoch
};

struct TrainingInfo {
  std::size_t examples = 0;  // after oversampling
  std::size_t hate = 0;
  std::size_t not_hate = 0;
  bool oversampled = false;
};

inline constexpr int kArtifactVersion = 1;

struct ModelArtifact {
  int version = kArtifactVersion;
  ModelSpec spec;
  std::uint64_t seed = 0;
  std::optional<features::Vocab> vocab;  // SVM and BRF
  TrainingInfo training;
  std::variant<SvmParams, BrfParams, FastTextParams> params;

  ModelType type() const noexcept { return spec.type; }
  // Identifies the feature space predictions must be made in.
  std::uint64_t feature_fingerprint() const;

  Json to_json() const;
  static ModelArtifact from_json(const Json& j);  // throws Error(FeatureConfigMismatch) on inconsistency
  void save(const std::filesystem::path& path) const;
  static ModelArtifact load(const std::filesystem::path& path);
};

struct Prediction {
  bool hate = false;
  double score = 0.0;  // in [0, 1]
};

// Model input already mapped into a feature space.
struct Featurized {
  std::uint64_t fingerprint = 0;
  features::SparseVector vector;  // TF-IDF for SVM/BRF, bucket counts for FastText
};

Featurized featurize(const ModelArtifact& model, const std::vector<std::u32string>& tokens);

// Throws Error(FeatureConfigMismatch) when `input` was built for another
// feature space.
Prediction predict(const ModelArtifact& model, const Featurized& input);
Prediction predict(const ModelArtifact& model, const std::vector<std::u32string>& tokens);

// Vocab (SVM/BRF) is built from `train` as given; when `oversample` is set the
// minority class is then duplicated before fitting. Throws Error(SingleClass)
// or Error(NonFiniteLoss).
ModelArtifact train_model(const ModelSpec& spec, const Dataset& train, std::uint64_t seed, bool oversample);

// Lower-level trainers on prepared features.
SvmParams train_svm(const std::vector<features::SparseVector>& x, const std::vector<bool>& y, std::size_t dim,
                    const SvmHyper& hyper, std::uint64_t seed);
double svm_objective(const SvmParams& p, const std::vector<features::SparseVector>& x, const std::vector<bool>& y,
                     double lambda);
double svm_margin(const SvmParams& p, const features::SparseVector& x);

BrfParams train_brf(const std::vector<features::SparseVector>& x, const std::vector<bool>& y,
                    const std::vector<std::string>& ids, std::size_t dim, const BrfHyper& hyper, std::uint64_t seed);
double brf_score(const BrfParams& p, const features::SparseVector& x);

// Bucket counts of the hashed word, word n-gram and char n-gram inputs of
// the FastText-style model.
features::SparseVector fasttext_inputs(const std::vector<std::u32string>& tokens, const FastTextHyper& hyper);
FastTextParams train_fasttext(const std::vector<features::SparseVector>& inputs, const std::vector<bool>& y,
                              const FastTextHyper& hyper, std::uint64_t seed);
// Softmax probability of the hate class.
double fasttext_score(const FastTextParams& p, std::uint64_t seed, const features::SparseVector& inputs);

double logistic(double margin);

}  // namespace hatelab::models
