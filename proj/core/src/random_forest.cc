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

#include <algorithm>
#include <limits>
#include <numeric>

#include "linelabel/learners.h"
#include "linelabel/random.h"

namespace linelabel::ml {

namespace {

class TreeGrower {
 public:
  TreeGrower(const Dataset& data, std::span<const double> weight,
             const RandomForestParams& params, Rng& rng)
      : data_(data), weight_(weight), params_(params), rng_(rng) {
    const int d = static_cast<int>(data.dims());
    mtry_ = params.mtry <= 0 || params.mtry >= d ? d : params.mtry;
    features_.resize(static_cast<size_t>(d));
    std::iota(features_.begin(), features_.end(), 0);
  }

  DecisionTree Grow(std::vector<size_t> rows) {
    Build(rows, 0);
    return std::move(tree_);
  }

 private:
  struct Entry {
    double value;
    double w;
    double wy;
  };

  static double Gini(double pos, double total) {
    if (total <= 0) return 0.0;
    const double p = pos / total;
    return 2.0 * p * (1.0 - p);
  }

  std::vector<int> CandidateFeatures() {
    const int d = static_cast<int>(features_.size());
    if (mtry_ == d) return features_;
    std::vector<int> pool = features_;
    for (int i = 0; i < mtry_; ++i) {
      const size_t j = static_cast<size_t>(i) + rng_.Index(static_cast<uint64_t>(d - i));
      std::swap(pool[static_cast<size_t>(i)], pool[j]);
    }
    pool.resize(static_cast<size_t>(mtry_));
    std::sort(pool.begin(), pool.end());
    return pool;
  }

  int Build(std::vector<size_t>& rows, int depth) {
    double total = 0.0;
    double pos = 0.0;
    for (size_t r : rows) {
      total += weight_[r];
      if (data_.y[r] == 1) pos += weight_[r];
    }
    const int id = static_cast<int>(tree_.nodes.size());
    tree_.nodes.push_back({});
    tree_.nodes[static_cast<size_t>(id)].fraction = total > 0 ? pos / total : 0.0;

    const size_t min_leaf = static_cast<size_t>(params_.min_leaf);
    if (depth >= params_.max_depth || pos <= 0.0 || pos >= total ||
        rows.size() < 2 * min_leaf) {
      return id;
    }

    const double parent = Gini(pos, total);
    double best_gain = -1.0;
    int best_feature = -1;
    double best_threshold = 0.0;
    std::vector<Entry> entries(rows.size());
    for (int f : CandidateFeatures()) {
      for (size_t i = 0; i < rows.size(); ++i) {
        const size_t r = rows[i];
        const double w = weight_[r];
        entries[i] = {data_.x[r][static_cast<size_t>(f)], w, data_.y[r] == 1 ? w : 0.0};
      }
      std::sort(entries.begin(), entries.end(),
                [](const Entry& a, const Entry& b) { return a.value < b.value; });
      double left_w = 0.0;
      double left_pos = 0.0;
      for (size_t i = 0; i + 1 < entries.size(); ++i) {
        left_w += entries[i].w;
        left_pos += entries[i].wy;
        if (entries[i].value == entries[i + 1].value) continue;
        if (i + 1 < min_leaf || entries.size() - i - 1 < min_leaf) continue;
        const double right_w = total - left_w;
        const double child =
            (left_w * Gini(left_pos, left_w) + right_w * Gini(pos - left_pos, right_w)) / total;
        const double gain = parent - child;
        if (gain > best_gain + 1e-12) {
          best_gain = gain;
          best_feature = f;
          best_threshold = entries[i].value + (entries[i + 1].value - entries[i].value) / 2.0;
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
    rows.clear();
    rows.shrink_to_fit();
    const int l = Build(left, depth + 1);
    const int rr = Build(right, depth + 1);
    TreeNode& node = tree_.nodes[static_cast<size_t>(id)];
    node.feature = best_feature;
    node.threshold = best_threshold;
    node.left = l;
    node.right = rr;
    return id;
  }

  const Dataset& data_;
  std::span<const double> weight_;
  const RandomForestParams& params_;
  Rng& rng_;
  int mtry_ = 0;
  std::vector<int> features_;
  DecisionTree tree_;
};

}  // namespace

double DecisionTree::Score(std::span<const double> x) const {
  int n = 0;
  while (nodes[static_cast<size_t>(n)].feature >= 0) {
    const TreeNode& node = nodes[static_cast<size_t>(n)];
    n = x[static_cast<size_t>(node.feature)] <= node.threshold ? node.left : node.right;
  }
  return nodes[static_cast<size_t>(n)].fraction;
}

double RandomForestModel::Score(std::span<const double> x) const {
  double sum = 0.0;
  for (const DecisionTree& t : trees) sum += t.Score(x);
  return sum / static_cast<double>(trees.size());
}

RandomForestModel TrainRandomForest(const Dataset& data, const RandomForestParams& params,
                                    uint64_t seed) {
  CheckTrainable(data);
  RandomForestModel model;
  model.params = params;
  model.seed = seed;
  const std::vector<double> weight = SampleWeights(data, params.balanced);
  Rng rng(seed);
  const size_t n = data.rows();
  for (int t = 0; t < params.n_trees; ++t) {
    std::vector<size_t> rows(n);
    if (params.bootstrap) {
      for (size_t i = 0; i < n; ++i) rows[i] = rng.Index(n);
    } else {
      std::iota(rows.begin(), rows.end(), size_t{0});
    }
    model.trees.push_back(TreeGrower(data, weight, params, rng).Grow(std::move(rows)));
  }
  return model;
}

Json RandomForestModel::ToJson() const {
  Json j;
  j["format_version"] = kModelFormatVersion;
  j["kind"] = std::string(kind());
  j["params"] = params.ToJson();
  j["seed"] = seed;
  Json forest = Json::array();
  for (const DecisionTree& t : trees) {
    Json nodes = Json::array();
    for (const TreeNode& n : t.nodes) {
      nodes.push_back(Json::array({n.feature, n.threshold, n.left, n.right, n.fraction}));
    }
    forest.push_back(std::move(nodes));
  }
  j["trees"] = std::move(forest);
  return j;
}

RandomForestModel RandomForestModel::FromJson(const Json& json) {
  RandomForestModel m;
  m.params = RandomForestParams::FromJson(json.at("params"));
  m.seed = json.at("seed").get<uint64_t>();
  for (const Json& nodes : json.at("trees")) {
    DecisionTree t;
    for (const Json& n : nodes) {
      t.nodes.push_back({n.at(0).get<int>(), n.at(1).get<double>(), n.at(2).get<int>(),
                         n.at(3).get<int>(), n.at(4).get<double>()});
    }
    m.trees.push_back(std::move(t));
  }
  return m;
}

}  // namespace linelabel::ml
