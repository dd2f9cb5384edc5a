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

#ifndef LINELABEL_LEARNERS_H_
#define LINELABEL_LEARNERS_H_

// Binary classifiers sharing one contract: a score in [0, 1] whose
// label is score >= 0.5. All training is deterministic given the seed.

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "linelabel/jsonl.h"

namespace linelabel::ml {

struct Dataset {
  std::vector<std::vector<double>> x;
  std::vector<int> y;  // 0 or 1
  std::vector<std::string> ids;

  size_t rows() const { return x.size(); }
  size_t dims() const { return x.empty() ? 0 : x.front().size(); }
  void Add(std::vector<double> features, int label, std::string id = "");
  Dataset Subset(std::span<const size_t> rows) const;
  size_t CountPositive() const;
};

// Throws ContractError for ragged rows, non-binary labels or mismatched
// column counts, DegenerateModelError when one class is missing.
void CheckTrainable(const Dataset& data);

// Per-feature standardisation fit on training rows. Features with zero
// variance are marked constant and map to 0.
struct Scaler {
  std::vector<double> mean;
  std::vector<double> scale;  // 0 for constant features

  static Scaler Fit(const Dataset& data);
  bool IsConstant(size_t feature) const { return scale[feature] == 0.0; }
  std::vector<double> Transform(std::span<const double> x) const;
  Json ToJson() const;
  static Scaler FromJson(const Json& json);
};

struct Prediction {
  int label = 0;
  double score = 0.0;
};

// Ties at exactly 0.5 are labelled 1.
inline int LabelForScore(double score) { return score >= 0.5 ? 1 : 0; }

class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual std::string_view kind() const = 0;
  virtual double Score(std::span<const double> x) const = 0;
  virtual Json ToJson() const = 0;

  Prediction Predict(std::span<const double> x) const {
    const double s = Score(x);
    return {LabelForScore(s), s};
  }
};

// Inverse class frequency weights (mean 1) or all ones.
std::vector<double> SampleWeights(const Dataset& data, bool balanced);

// ---- random forest ----

struct RandomForestParams {
  int n_trees = 100;
  int max_depth = 12;
  int min_leaf = 1;
  int mtry = 6;  // features tried per split; <= 0 means all
  bool bootstrap = true;
  bool balanced = false;

  Json ToJson() const;
  static RandomForestParams FromJson(const Json& json);
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;  // x[feature] <= threshold goes left
  int left = -1;
  int right = -1;
  double fraction = 0.0;  // weighted positive fraction of training rows
};

struct DecisionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
  double Score(std::span<const double> x) const;
};

class RandomForestModel : public Classifier {
 public:
  RandomForestParams params;
  uint64_t seed = 0;
  std::vector<DecisionTree> trees;

  std::string_view kind() const override { return "random_forest"; }
  // Mean leaf fraction over trees.
  double Score(std::span<const double> x) const override;
  Json ToJson() const override;
  static RandomForestModel FromJson(const Json& json);
};

RandomForestModel TrainRandomForest(const Dataset& data, const RandomForestParams& params,
                                    uint64_t seed);

// ---- linear SVM ----

struct LinearSvmParams {
  double lambda = 1e-3;
  int epochs = 50;
  bool balanced = false;

  Json ToJson() const;
  static LinearSvmParams FromJson(const Json& json);
};

class LinearSvmModel : public Classifier {
 public:
  LinearSvmParams params;
  uint64_t seed = 0;
  Scaler scaler;
  std::vector<double> weights;
  double bias = 0.0;
  // Score = sigmoid(platt_a * margin + platt_b), platt_a >= 0.
  double platt_a = 1.0;
  double platt_b = 0.0;

  std::string_view kind() const override { return "linear_svm"; }
  double Margin(std::span<const double> x) const;
  double Score(std::span<const double> x) const override;
  Json ToJson() const override;
  static LinearSvmModel FromJson(const Json& json);
};

// Stochastic subgradient descent on the L2-regularised hinge loss over
// standardised features, followed by logistic calibration of the margin.
LinearSvmModel TrainLinearSvm(const Dataset& data, const LinearSvmParams& params,
                              uint64_t seed);

// Fits sigmoid(a * margin + b) to labels by regularised Newton steps,
// with a constrained to be non-negative.
void FitPlattScaling(std::span<const double> margins, std::span<const int> labels,
                     double* a, double* b);

// ---- logistic regression ----

struct LogisticRegressionParams {
  double learning_rate = 0.1;
  int epochs = 200;
  double l2 = 1e-4;
  bool balanced = false;

  Json ToJson() const;
  static LogisticRegressionParams FromJson(const Json& json);
};

class LogisticRegressionModel : public Classifier {
 public:
  LogisticRegressionParams params;
  uint64_t seed = 0;
  Scaler scaler;
  std::vector<double> weights;
  double bias = 0.0;

  std::string_view kind() const override { return "logistic_regression"; }
  double Score(std::span<const double> x) const override;
  Json ToJson() const override;
  static LogisticRegressionModel FromJson(const Json& json);
};

// Weighted mean log loss plus l2/2 * |w|^2 at (w, b) over already
// standardised rows. When `gradient` is non-null it receives dL/dw
// followed by dL/db.
double LogisticObjective(const std::vector<std::vector<double>>& x, std::span<const int> y,
                         std::span<const double> sample_weight, std::span<const double> w,
                         double b, double l2, std::vector<double>* gradient);

// Full-batch gradient descent from zero weights.
LogisticRegressionModel TrainLogisticRegression(const Dataset& data,
                                                const LogisticRegressionParams& params,
                                                uint64_t seed);

// ---- metrics ----

struct Metrics {
  int tp = 0;
  int fp = 0;
  int fn = 0;
  int tn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  Json ToJson() const;
  static Metrics FromJson(const Json& json);
};

Metrics ComputeMetrics(std::span<const int> truth, std::span<const int> predicted);
Metrics Evaluate(const Classifier& model, const Dataset& data);

// ---- configuration and persistence ----

inline constexpr int kModelFormatVersion = 1;

struct LearnerConfig {
  RandomForestParams random_forest;
  LinearSvmParams linear_svm;
  LogisticRegressionParams logistic_regression;

  Json ToJson() const;
  // Missing keys keep their defaults; unknown keys are rejected.
  static LearnerConfig FromJson(const Json& json);
};

// Trains a model of the given kind ("random_forest", "linear_svm",
// "logistic_regression").
std::unique_ptr<Classifier> TrainModel(std::string_view kind, const Dataset& data,
                                       const LearnerConfig& config, uint64_t seed);

std::unique_ptr<Classifier> ModelFromJson(const Json& json);
void SaveModel(const std::filesystem::path& path, const Classifier& model);
std::unique_ptr<Classifier> LoadModel(const std::filesystem::path& path);

}  // namespace linelabel::ml

#endif  // LINELABEL_LEARNERS_H_
