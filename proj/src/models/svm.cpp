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

#include <cmath>
#include <numeric>
#include <string>

#include "hatelab/models/model.hpp"
#include "hatelab/simd/kernels.hpp"
#include "hatelab/util/error.hpp"
#include "hatelab/util/random.hpp"

namespace hatelab::models {

using features::SparseVector;

namespace {

void check_classes(const std::vector<bool>& y) {
  std::size_t yes = 0;
  for (bool v : y) yes += v ? 1 : 0;
  if (yes == 0 || yes == y.size()) throw Error(ErrorCode::SingleClass, "training data has a single class");
}

double sparse_dot(const SparseVector& x, const std::vector<double>& dense) {
  return simd::kernels().sparse_dot_f64(x.index.data(), x.value.data(), x.nnz(), dense.data());
}

}  // namespace

double logistic(double margin) {
  if (margin >= 0.0) return 1.0 / (1.0 + std::exp(-margin));
  const double e = std::exp(margin);
  return e / (1.0 + e);
}

double svm_margin(const SvmParams& p, const SparseVector& x) {
  return sparse_dot(x, p.weights) + p.bias;
}

double svm_objective(const SvmParams& p, const std::vector<SparseVector>& x, const std::vector<bool>& y,
                     double lambda) {
  double norm2 = p.bias * p.bias;
  for (double w : p.weights) norm2 += w * w;
  double hinge = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double sign = y[i] ? 1.0 : -1.0;
    hinge += std::max(0.0, 1.0 - sign * svm_margin(p, x[i]));
  }
  return lambda / 2.0 * norm2 + (x.empty() ? 0.0 : hinge / static_cast<double>(x.size()));
}

SvmParams train_svm(const std::vector<SparseVector>& x, const std::vector<bool>& y, std::size_t dim,
                    const SvmHyper& hyper, std::uint64_t seed) {
  if (x.size() != y.size()) throw Error(ErrorCode::InvalidArgument, "feature and label counts differ");
  if (!(hyper.lambda > 0.0) || hyper.epochs < 1) {
    throw Error(ErrorCode::InvalidArgument, "svm needs lambda > 0 and epochs >= 1");
  }
  check_classes(y);
  for (const auto& v : x) {
    if (!v.index.empty() && v.index.back() >= dim) throw Error(ErrorCode::InvalidArgument, "feature index out of range");
  }

  const auto& k = simd::kernels();
  const double lambda = hyper.lambda;
  const double radius = 1.0 / std::sqrt(lambda);

  // w = scale * v, bias = scale * vb; norm2 tracks |v|^2 + vb^2.
  std::vector<double> v(dim, 0.0);
  double vb = 0.0;
  double scale = 1.0;
  double norm2 = 0.0;
  std::vector<double> x_norm2(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double s = 0.0;
    for (double a : x[i].value) s += a * a;
    x_norm2[i] = s;
  }

  SvmParams best;
  best.weights.assign(dim, 0.0);
  double best_objective = svm_objective(best, x, y, lambda);

  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::uint64_t t = 0;
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(epoch)));
    rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t i : order) {
      ++t;
      const double eta = 1.0 / (lambda * static_cast<double>(t));
      const double sign = y[i] ? 1.0 : -1.0;
      const double margin = scale * (k.sparse_dot_f64(x[i].index.data(), x[i].value.data(), x[i].nnz(), v.data()) + vb);
      const double shrink = 1.0 - eta * lambda;
      if (shrink <= 0.0) {
        std::fill(v.begin(), v.end(), 0.0);
        vb = 0.0;
        scale = 1.0;
        norm2 = 0.0;
      } else {
        scale *= shrink;
      }
      if (sign * margin < 1.0) {
        const double a = eta * sign / scale;
        const double dot = k.sparse_dot_f64(x[i].index.data(), x[i].value.data(), x[i].nnz(), v.data());
        k.sparse_axpy_f64(a, x[i].index.data(), x[i].value.data(), x[i].nnz(), v.data());
        norm2 += 2.0 * a * (dot + vb) + a * a * (x_norm2[i] + 1.0);
        vb += a;
      }
      const double wnorm = scale * std::sqrt(std::max(norm2, 0.0));
      if (wnorm > radius) scale *= radius / wnorm;
      if (scale < 1e-9) {
        for (double& w : v) w *= scale;
        vb *= scale;
        norm2 *= scale * scale;
        scale = 1.0;
      }
    }
    SvmParams current;
    current.weights.resize(dim);
    for (std::size_t j = 0; j < dim; ++j) current.weights[j] = scale * v[j];
    current.bias = scale * vb;
    const double objective = svm_objective(current, x, y, lambda);
    if (!std::isfinite(objective)) {
      throw Error(ErrorCode::NonFiniteLoss, "svm objective diverged in epoch " + std::to_string(epoch + 1));
    }
    if (objective <= best_objective) {
      best_objective = objective;
      best.weights = std::move(current.weights);
      best.bias = current.bias;
    }
    best.objective_trace.push_back(best_objective);
  }
  return best;
}

}  // namespace hatelab::models
