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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

#include "hatelab/models/model.hpp"
#include "hatelab/simd/kernels.hpp"
#include "hatelab/util/error.hpp"
#include "hatelab/util/random.hpp"

namespace hatelab::models {

using features::SparseVector;

namespace {

void init_row(std::uint64_t seed, std::uint32_t bucket, std::size_t dim, float* out) {
  Rng rng(derive_seed(seed, bucket));
  const double bound = 1.0 / static_cast<double>(dim);
  for (std::size_t d = 0; d < dim; ++d) out[d] = static_cast<float>(rng.uniform(-bound, bound));
}

// Softmax over the two output rows; returns p(hate).
double softmax_hate(double l0, double l1) {
  const double m = std::max(l0, l1);
  const double e0 = std::exp(l0 - m);
  const double e1 = std::exp(l1 - m);
  return e1 / (e0 + e1);
}

}  // namespace

SparseVector fasttext_inputs(const std::vector<std::u32string>& tokens, const FastTextHyper& hyper) {
  std::vector<features::Ngram> grams;
  if (hyper.word_ngrams >= 1) {
    grams = features::extract_ngrams(tokens, {features::Unit::Word, 1, hyper.word_ngrams});
  }
  if (hyper.char_min >= 1 && hyper.char_max >= hyper.char_min) {
    std::vector<std::u32string> wrapped;
    wrapped.reserve(tokens.size());
    for (const auto& t : tokens) wrapped.push_back(U"<" + t + U">");
    auto chars = features::extract_ngrams(wrapped, {features::Unit::Char, hyper.char_min, hyper.char_max});
    grams.insert(grams.end(), std::make_move_iterator(chars.begin()), std::make_move_iterator(chars.end()));
  }
  return features::hash_features(grams, hyper.buckets);
}

FastTextParams train_fasttext(const std::vector<SparseVector>& inputs, const std::vector<bool>& y,
                              const FastTextHyper& hyper, std::uint64_t seed) {
  if (inputs.size() != y.size()) throw Error(ErrorCode::InvalidArgument, "input and label counts differ");
  if (hyper.dim == 0 || hyper.epochs < 1 || !(hyper.lr > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "fasttext needs dim >= 1, epochs >= 1 and lr > 0");
  }
  std::size_t yes = 0;
  for (bool v : y) yes += v ? 1 : 0;
  if (yes == 0 || yes == y.size()) throw Error(ErrorCode::SingleClass, "training data has a single class");

  const std::size_t dim = hyper.dim;
  const auto& k = simd::kernels();

  // Rows exist only for buckets seen in training; slots follow bucket order.
  std::vector<std::uint32_t> buckets;
  for (const auto& v : inputs) buckets.insert(buckets.end(), v.index.begin(), v.index.end());
  std::sort(buckets.begin(), buckets.end());
  buckets.erase(std::unique(buckets.begin(), buckets.end()), buckets.end());
  std::unordered_map<std::uint32_t, std::uint32_t> slot_of;
  slot_of.reserve(buckets.size());
  for (std::size_t i = 0; i < buckets.size(); ++i) slot_of.emplace(buckets[i], static_cast<std::uint32_t>(i));

  std::vector<float> rows(buckets.size() * dim);
  for (std::size_t i = 0; i < buckets.size(); ++i) init_row(seed, buckets[i], dim, rows.data() + i * dim);

  struct Doc {
    std::vector<std::uint32_t> slots;
    std::vector<float> weights;  // count / total count
  };
  std::vector<Doc> docs(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    double total = 0.0;
    for (double c : inputs[i].value) total += c;
    for (std::size_t j = 0; j < inputs[i].nnz(); ++j) {
      docs[i].slots.push_back(slot_of.at(inputs[i].index[j]));
      docs[i].weights.push_back(static_cast<float>(inputs[i].value[j] / total));
    }
  }

  FastTextParams p;
  p.dim = dim;
  p.output.assign(2 * dim, 0.0f);
  p.output_bias.assign(2, 0.0f);

  std::vector<float> hidden(dim), grad(dim);
  std::vector<std::size_t> order(inputs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const double total_steps = static_cast<double>(hyper.epochs) * static_cast<double>(inputs.size());
  double step = 0.0;
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    Rng rng(derive_seed(seed ^ 0x5eedf00dULL, static_cast<std::uint64_t>(epoch)));
    rng.shuffle(std::span<std::size_t>(order));
    double loss = 0.0;
    for (std::size_t i : order) {
      const double lr = hyper.lr * (1.0 - step / total_steps);
      step += 1.0;
      const Doc& doc = docs[i];
      std::fill(hidden.begin(), hidden.end(), 0.0f);
      for (std::size_t j = 0; j < doc.slots.size(); ++j) {
        k.axpy_f32(doc.weights[j], rows.data() + static_cast<std::size_t>(doc.slots[j]) * dim, hidden.data(), dim);
      }
      const double l0 = k.dot_f32(p.output.data(), hidden.data(), dim) + p.output_bias[0];
      const double l1 = k.dot_f32(p.output.data() + dim, hidden.data(), dim) + p.output_bias[1];
      const double ph = softmax_hate(l0, l1);
      const double target = y[i] ? 1.0 : 0.0;
      const double py = y[i] ? ph : 1.0 - ph;
      loss += -std::log(std::max(py, 1e-300));

      // d loss / d logit_c = p_c - [c == y]
      const double g1 = ph - target;
      const double g0 = -g1;
      std::fill(grad.begin(), grad.end(), 0.0f);
      k.axpy_f32(static_cast<float>(g0), p.output.data(), grad.data(), dim);
      k.axpy_f32(static_cast<float>(g1), p.output.data() + dim, grad.data(), dim);
      k.axpy_f32(static_cast<float>(-lr * g0), hidden.data(), p.output.data(), dim);
      k.axpy_f32(static_cast<float>(-lr * g1), hidden.data(), p.output.data() + dim, dim);
      p.output_bias[0] -= static_cast<float>(lr * g0);
      p.output_bias[1] -= static_cast<float>(lr * g1);
      for (std::size_t j = 0; j < doc.slots.size(); ++j) {
        k.axpy_f32(static_cast<float>(-lr) * doc.weights[j], grad.data(),
                   rows.data() + static_cast<std::size_t>(doc.slots[j]) * dim, dim);
      }
    }
    const double mean = loss / static_cast<double>(inputs.size());
    if (!std::isfinite(mean)) {
      throw Error(ErrorCode::NonFiniteLoss, "fasttext loss diverged in epoch " + std::to_string(epoch + 1));
    }
    p.loss_trace.push_back(mean);
  }
  p.row_buckets = std::move(buckets);
  p.rows = std::move(rows);
  return p;
}

double fasttext_score(const FastTextParams& p, std::uint64_t seed, const SparseVector& inputs) {
  const std::size_t dim = p.dim;
  const auto& k = simd::kernels();
  std::vector<float> hidden(dim, 0.0f), fresh(dim);
  double total = 0.0;
  for (double c : inputs.value) total += c;
  for (std::size_t j = 0; j < inputs.nnz(); ++j) {
    const float w = static_cast<float>(inputs.value[j] / total);
    auto it = std::lower_bound(p.row_buckets.begin(), p.row_buckets.end(), inputs.index[j]);
    const float* row;
    if (it != p.row_buckets.end() && *it == inputs.index[j]) {
      row = p.rows.data() + static_cast<std::size_t>(it - p.row_buckets.begin()) * dim;
    } else {
      init_row(seed, inputs.index[j], dim, fresh.data());
      row = fresh.data();
    }
    k.axpy_f32(w, row, hidden.data(), dim);
  }
  const double l0 = k.dot_f32(p.output.data(), hidden.data(), dim) + p.output_bias[0];
  const double l1 = k.dot_f32(p.output.data() + dim, hidden.data(), dim) + p.output_bias[1];
  return softmax_hate(l0, l1);
}

}  // namespace hatelab::models
