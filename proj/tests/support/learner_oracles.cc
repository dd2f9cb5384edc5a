// Copyright 2026 The linelabel Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "support/learner_oracles.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "linelabel/random.h"

namespace linelabel::testing {

CartOracle::CartOracle(const ml::Dataset& data, int max_depth, int min_leaf)
    : data_(data), max_depth_(max_depth), min_leaf_(min_leaf) {
  std::vector<size_t> rows(data.rows());
  for (size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  Build(rows, 0);
}

int CartOracle::Build(const std::vector<size_t>& rows, int depth) {
  auto gini = [](double pos, double total) {
    if (total <= 0) return 0.0;
    const double p = pos / total;
    return 2.0 * p * (1.0 - p);
  };
  double pos = 0;
  for (size_t r : rows) pos += data_.y[r];
  const double total = static_cast<double>(rows.size());
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back({});
  nodes_[static_cast<size_t>(id)].fraction = pos / total;
  if (depth >= max_depth_ || pos == 0 || pos == total ||
      rows.size() < 2 * static_cast<size_t>(min_leaf_)) {
    return id;
  }

  const double parent = gini(pos, total);
  double best_gain = -1.0;
  int best_feature = -1;
  double best_threshold = 0.0;
  for (size_t f = 0; f < data_.dims(); ++f) {
    std::vector<double> values;
    for (size_t r : rows) values.push_back(data_.x[r][f]);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (size_t v = 0; v + 1 < values.size(); ++v) {
      const double threshold = values[v] + (values[v + 1] - values[v]) / 2.0;
      double lw = 0;
      double lp = 0;
      for (size_t r : rows) {
        if (data_.x[r][f] <= threshold) {
          lw += 1;
          lp += data_.y[r];
        }
      }
      const double rw = total - lw;
      if (lw < min_leaf_ || rw < min_leaf_) continue;
      const double gain = parent - (lw * gini(lp, lw) + rw * gini(pos - lp, rw)) / total;
      if (gain > best_gain + 1e-12) {
        best_gain = gain;
        best_feature = static_cast<int>(f);
        best_threshold = threshold;
      }
    }
  }
  if (best_feature < 0) return id;

  std::vector<size_t> left;
  std::vector<size_t> right;
  for (size_t r : rows) {
    (data_.x[r][static_cast<size_t>(best_feature)] <= best_threshold ? left : right)
        .push_back(r);
  }
  const int l = Build(left, depth + 1);
  const int rr = Build(right, depth + 1);
  Node& node = nodes_[static_cast<size_t>(id)];
  node.feature = best_feature;
  node.threshold = best_threshold;
  node.left = l;
  node.right = rr;
  return id;
}

double CartOracle::Score(std::span<const double> x) const {
  const Node* n = &nodes_.front();
  while (n->feature >= 0) {
    n = &nodes_[static_cast<size_t>(x[static_cast<size_t>(n->feature)] <= n->threshold
                                        ? n->left
                                        : n->right)];
  }
  return n->fraction;
}

ml::Dataset RandomDataset(uint64_t seed, int rows, int dims, int levels) {
  Rng rng(seed);
  ml::Dataset data;
  for (int r = 0; r < rows; ++r) {
    std::vector<double> x;
    for (int d = 0; d < dims; ++d) {
      x.push_back(static_cast<double>(rng.Index(static_cast<uint64_t>(levels))));
    }
    int label = (x[0] + x[1] > levels - 1) ? 1 : 0;
    if (rng.Bernoulli(0.15)) label = 1 - label;
    data.Add(std::move(x), label, "r" + std::to_string(r));
  }
  // Both classes must be present.
  data.y[0] = 0;
  data.y[1] = 1;
  return data;
}

CartRun RunCartEquivalence(int count, uint64_t seed) {
  CartRun run;
  ml::RandomForestParams params;
  params.n_trees = 1;
  params.bootstrap = false;
  params.mtry = 0;
  for (int i = 0; i < count; ++i) {
    const uint64_t s = MixSeed(seed, static_cast<uint64_t>(i));
    Rng shape(s);
    const int rows = 8 + static_cast<int>(shape.Index(40));
    const int dims = 2 + static_cast<int>(shape.Index(5));
    const int levels = 2 + static_cast<int>(shape.Index(6));
    params.max_depth = 2 + static_cast<int>(shape.Index(10));
    params.min_leaf = 1 + static_cast<int>(shape.Index(3));
    ml::Dataset data = RandomDataset(s, rows, dims, levels);
    ml::RandomForestModel forest = ml::TrainRandomForest(data, params, s);
    CartOracle cart(data, params.max_depth, params.min_leaf);
    ++run.datasets;

    std::vector<std::vector<double>> probes = data.x;
    for (int p = 0; p < 50; ++p) {
      std::vector<double> x;
      for (int d = 0; d < dims; ++d) x.push_back(shape.Uniform() * levels - 0.5);
      probes.push_back(std::move(x));
    }
    std::ostringstream why;
    if (static_cast<int>(forest.trees.front().nodes.size()) != cart.node_count()) {
      why << "dataset " << i << ": node count " << forest.trees.front().nodes.size()
          << " vs " << cart.node_count();
    } else {
      for (const auto& x : probes) {
        if (forest.Score(x) != cart.Score(x)) {
          why << "dataset " << i << ": score " << forest.Score(x) << " vs " << cart.Score(x);
          break;
        }
      }
    }
    if (!why.str().empty()) {
      ++run.failures;
      if (run.first_failure.empty()) run.first_failure = why.str();
    }
  }
  return run;
}

double MaxLogisticGradientError(int trials, uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const size_t n = 5 + rng.Index(30);
    const size_t d = 1 + rng.Index(8);
    std::vector<std::vector<double>> x(n, std::vector<double>(d));
    std::vector<int> y(n);
    std::vector<double> weight(n);
    for (size_t i = 0; i < n; ++i) {
      for (double& v : x[i]) v = rng.Uniform() * 4 - 2;
      y[i] = rng.Bernoulli(0.4) ? 1 : 0;
      weight[i] = 0.5 + rng.Uniform();
    }
    std::vector<double> w(d);
    for (double& v : w) v = rng.Uniform() * 2 - 1;
    const double b = rng.Uniform() - 0.5;
    const double l2 = rng.Bernoulli(0.5) ? 0.0 : rng.Uniform() * 0.1;

    std::vector<double> grad;
    ml::LogisticObjective(x, y, weight, w, b, l2, &grad);
    const double h = 1e-5;
    for (size_t k = 0; k <= d; ++k) {
      std::vector<double> wp = w;
      std::vector<double> wm = w;
      double bp = b;
      double bm = b;
      if (k < d) {
        wp[k] += h;
        wm[k] -= h;
      } else {
        bp += h;
        bm -= h;
      }
      const double numeric = (ml::LogisticObjective(x, y, weight, wp, bp, l2, nullptr) -
                              ml::LogisticObjective(x, y, weight, wm, bm, l2, nullptr)) /
                             (2 * h);
      const double denom = std::max({std::fabs(grad[k]), std::fabs(numeric), 1e-4});
      worst = std::max(worst, std::fabs(grad[k] - numeric) / denom);
    }
  }
  return worst;
}

}  // namespace linelabel::testing
