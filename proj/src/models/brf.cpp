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

#include "hatelab/models/model.hpp"
#include "hatelab/util/error.hpp"
#include "hatelab/util/random.hpp"

namespace hatelab::models {

using features::SparseVector;

namespace {

struct Split {
  std::int32_t feature = -1;
  double threshold = 0.0;
  double impurity = 0.0;
};

double gini(double yes, double no) {
  const double n = yes + no;
  if (n == 0.0) return 0.0;
  const double p = yes / n;
  return 1.0 - p * p - (1.0 - p) * (1.0 - p);
}

class TreeBuilder {
 public:
  TreeBuilder(const std::vector<SparseVector>& x, const std::vector<bool>& y, std::size_t dim, const BrfHyper& hyper,
              std::size_t features_per_split, Rng& rng)
      : x_(x), y_(y), hyper_(hyper), k_(features_per_split), rng_(rng), count_(dim, 0), start_(dim, 0) {}

  std::vector<TreeNode> build(std::vector<std::uint32_t> samples) {
    nodes_.clear();
    grow(samples, 0);
    return std::move(nodes_);
  }

 private:
  std::int32_t grow(const std::vector<std::uint32_t>& samples, std::size_t depth) {
    const auto id = static_cast<std::int32_t>(nodes_.size());
    nodes_.emplace_back();
    std::size_t yes = 0;
    for (auto s : samples) yes += y_[s] ? 1 : 0;
    const std::size_t no = samples.size() - yes;
    nodes_[id].vote = yes > no;

    const bool pure = yes == 0 || no == 0;
    const bool depth_cap = hyper_.max_depth != 0 && depth >= hyper_.max_depth;
    if (pure || depth_cap || samples.size() < std::max<std::size_t>(hyper_.min_samples_split, 2)) return id;

    const Split split = best_split(samples, yes, no);
    if (split.feature < 0) return id;

    std::vector<std::uint32_t> left, right;
    for (auto s : samples) {
      (x_[s].at(static_cast<std::uint32_t>(split.feature)) <= split.threshold ? left : right).push_back(s);
    }
    nodes_[id].feature = split.feature;
    nodes_[id].threshold = split.threshold;
    const auto l = grow(left, depth + 1);
    nodes_[id].left = l;
    const auto r = grow(right, depth + 1);
    nodes_[id].right = r;
    return id;
  }

  // Candidates are drawn without replacement from the features present in the
  // node until k non-constant ones have been evaluated.
  Split best_split(const std::vector<std::uint32_t>& samples, std::size_t yes, std::size_t no) {
    // Column view of the node: present features with their (value, label)
    // entries laid out contiguously.
    std::vector<std::uint32_t> present;
    std::size_t total = 0;
    for (auto s : samples) {
      const auto& v = x_[s];
      for (auto f : v.index) {
        if (count_[f]++ == 0) present.push_back(f);
      }
      total += v.nnz();
    }
    std::sort(present.begin(), present.end());
    std::size_t offset = 0;
    for (auto f : present) {
      start_[f] = offset;
      offset += count_[f];
      count_[f] = 0;
    }
    entries_.resize(total);
    for (auto s : samples) {
      const auto& v = x_[s];
      for (std::size_t j = 0; j < v.nnz(); ++j) {
        const auto f = v.index[j];
        entries_[start_[f] + count_[f]++] = {v.value[j], y_[s]};
      }
    }

    Split best;
    best.impurity = INFINITY;
    std::size_t evaluated = 0;
    std::size_t remaining = present.size();
    std::vector<std::pair<double, bool>> values;
    while (evaluated < k_ && remaining > 0) {
      const std::size_t pick = static_cast<std::size_t>(rng_.below(remaining));
      const std::uint32_t feature = present[pick];
      std::swap(present[pick], present[remaining - 1]);
      --remaining;

      values.assign(entries_.begin() + static_cast<std::ptrdiff_t>(start_[feature]),
                    entries_.begin() + static_cast<std::ptrdiff_t>(start_[feature] + count_[feature]));
      std::size_t zero_yes = yes, zero_no = no;
      for (const auto& [value, label] : values) --(label ? zero_yes : zero_no);
      std::sort(values.begin(), values.end());
      const std::size_t zeros = zero_yes + zero_no;
      if (zeros == 0 && values.front().first == values.back().first) continue;
      ++evaluated;
      scan(feature, values, zero_yes, zero_no, yes, no, best);
    }
    for (auto f : present) count_[f] = 0;
    return best;
  }

  // Sweeps thresholds over the sorted values with the implicit zeros merged in.
  static void scan(std::uint32_t feature, const std::vector<std::pair<double, bool>>& values, std::size_t zero_yes,
                   std::size_t zero_no, std::size_t yes, std::size_t no, Split& best) {
    const double n = static_cast<double>(yes + no);
    double left_yes = 0.0, left_no = 0.0;
    bool zeros_added = zero_yes + zero_no == 0;
    double prev = 0.0;
    bool have_prev = false;

    auto consider = [&](double next) {
      if (!have_prev || !(prev < next)) return;
      const double left_n = left_yes + left_no;
      const double right_yes = static_cast<double>(yes) - left_yes;
      const double right_no = static_cast<double>(no) - left_no;
      const double impurity =
          (left_n * gini(left_yes, left_no) + (n - left_n) * gini(right_yes, right_no)) / n;
      if (impurity < best.impurity) {
        best.impurity = impurity;
        best.feature = static_cast<std::int32_t>(feature);
        best.threshold = prev + (next - prev) / 2.0;
        if (!(best.threshold < next)) best.threshold = prev;
      }
    };
    auto add_zeros = [&] {
      consider(0.0);
      left_yes += static_cast<double>(zero_yes);
      left_no += static_cast<double>(zero_no);
      prev = 0.0;
      have_prev = true;
      zeros_added = true;
    };
    for (const auto& [value, label] : values) {
      if (!zeros_added && value > 0.0) add_zeros();
      consider(value);
      (label ? left_yes : left_no) += 1.0;
      prev = value;
      have_prev = true;
    }
    if (!zeros_added) add_zeros();
  }

  const std::vector<SparseVector>& x_;
  const std::vector<bool>& y_;
  const BrfHyper& hyper_;
  std::size_t k_;
  Rng& rng_;
  std::vector<TreeNode> nodes_;
  std::vector<std::uint32_t> count_;
  std::vector<std::size_t> start_;
  std::vector<std::pair<double, bool>> entries_;
};

}  // namespace

BrfParams train_brf(const std::vector<SparseVector>& x, const std::vector<bool>& y, const std::vector<std::string>& ids,
                    std::size_t dim, const BrfHyper& hyper, std::uint64_t seed) {
  if (x.size() != y.size() || ids.size() != y.size()) {
    throw Error(ErrorCode::InvalidArgument, "feature, label and id counts differ");
  }
  if (hyper.n_trees == 0) throw Error(ErrorCode::InvalidArgument, "brf needs at least one tree");
  std::vector<std::uint32_t> pos, neg;
  for (std::size_t i = 0; i < y.size(); ++i) (y[i] ? pos : neg).push_back(static_cast<std::uint32_t>(i));
  if (pos.empty() || neg.empty()) throw Error(ErrorCode::SingleClass, "training data has a single class");

  const std::size_t k = hyper.features_per_split != 0
                            ? hyper.features_per_split
                            : std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(dim)))));
  const std::size_t per_class = std::min(pos.size(), neg.size());

  BrfParams params;
  params.train_ids = ids;
  params.train_labels = y;
  params.trees.resize(hyper.n_trees);
  for (std::size_t t = 0; t < hyper.n_trees; ++t) {
    Rng rng(derive_seed(seed, t));
    std::vector<std::uint32_t> sample;
    sample.reserve(2 * per_class);
    for (std::size_t i = 0; i < per_class; ++i) sample.push_back(neg[rng.below(neg.size())]);
    for (std::size_t i = 0; i < per_class; ++i) sample.push_back(pos[rng.below(pos.size())]);
    TreeBuilder builder(x, y, dim, hyper, k, rng);
    params.trees[t].nodes = builder.build(sample);
    params.trees[t].samples = std::move(sample);
  }
  return params;
}

double brf_score(const BrfParams& p, const SparseVector& x) {
  if (p.trees.empty()) return 0.0;
  std::size_t votes = 0;
  for (const auto& tree : p.trees) {
    std::int32_t n = 0;
    while (tree.nodes[n].feature >= 0) {
      const auto& node = tree.nodes[n];
      n = x.at(static_cast<std::uint32_t>(node.feature)) <= node.threshold ? node.left : node.right;
    }
    votes += tree.nodes[n].vote ? 1 : 0;
  }
  return static_cast<double>(votes) / static_cast<double>(p.trees.size());
}

}  // namespace hatelab::models
