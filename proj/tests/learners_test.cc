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


#include "linelabel/learners.h"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "linelabel/errors.h"
#include "linelabel/random.h"
#include "support/learner_oracles.h"

namespace linelabel::ml {
namespace {

Dataset Blobs(uint64_t seed, int per_class) {
  Rng rng(seed);
  Dataset data;
  for (int i = 0; i < 2 * per_class; ++i) {
    const int label = i % 2;
    const double center = label ? 3.0 : -3.0;
    data.Add({center + rng.Uniform() - 0.5, center + rng.Uniform() - 0.5, 7.0}, label,
             "r" + std::to_string(i));
  }
  return data;
}

Dataset OneDimensional() {
  Dataset data;
  data.Add({-1.0}, 0);
  data.Add({1.0}, 1);
  return data;
}

TEST(MetricsTest, Formulas) {
  // TP=2, FP=1, FN=1, TN=6.
  std::vector<int> truth = {1, 1, 1, 0, 0, 0, 0, 0, 0, 0};
  std::vector<int> pred = {1, 1, 0, 1, 0, 0, 0, 0, 0, 0};
  Metrics m = ComputeMetrics(truth, pred);
  EXPECT_EQ(m.tp, 2);
  EXPECT_EQ(m.fp, 1);
  EXPECT_EQ(m.fn, 1);
  EXPECT_EQ(m.tn, 6);
  EXPECT_NEAR(m.precision, 2.0 / 3, 1e-12);
  EXPECT_NEAR(m.recall, 2.0 / 3, 1e-12);
  EXPECT_NEAR(m.f1, 2.0 / 3, 1e-12);

  EXPECT_DOUBLE_EQ(ComputeMetrics(truth, truth).f1, 1.0);
  std::vector<int> balanced = {1, 0, 1, 0};
  std::vector<int> all_pos = {1, 1, 1, 1};
  Metrics p = ComputeMetrics(balanced, all_pos);
  EXPECT_DOUBLE_EQ(p.precision, 0.5);
  EXPECT_DOUBLE_EQ(p.recall, 1.0);
  EXPECT_NEAR(p.f1, 2.0 / 3, 1e-12);
  std::vector<int> none = {0, 0, 0, 0};
  EXPECT_EQ(ComputeMetrics(balanced, none).f1, 0.0);
}

TEST(RandomForestTest, MatchesExhaustiveCart) {
  auto run = testing::RunCartEquivalence(20, 3);
  EXPECT_EQ(run.failures, 0) << run.first_failure;
}

TEST(RandomForestTest, LearnsXor) {
  Dataset data;
  data.Add({0, 0}, 0);
  data.Add({0, 1}, 1);
  data.Add({1, 0}, 1);
  data.Add({1, 1}, 0);
  RandomForestParams params;
  params.n_trees = 1;
  params.bootstrap = false;
  params.mtry = 0;
  params.max_depth = 2;
  auto model = TrainRandomForest(data, params, 1);
  EXPECT_DOUBLE_EQ(Evaluate(model, data).f1, 1.0);
}

TEST(RandomForestTest, IdenticalRowsGiveThePrior) {
  Dataset data;
  for (int i = 0; i < 4; ++i) data.Add({1.0, 2.0}, i == 0 ? 1 : 0);
  RandomForestParams params;
  params.n_trees = 3;
  auto model = TrainRandomForest(data, params, 9);
  EXPECT_DOUBLE_EQ(model.Score(data.x[0]), 0.25);
}

TEST(LearnersTest, SeparableBlobsAreLearnedByEveryKind) {
  Dataset data = Blobs(4, 10);
  LearnerConfig config;
  for (const char* kind : {"random_forest", "linear_svm", "logistic_regression"}) {
    auto model = TrainModel(kind, data, config, 12);
    EXPECT_DOUBLE_EQ(Evaluate(*model, data).f1, 1.0) << kind;
  }
}

TEST(LearnersTest, SingleClassIsDegenerate) {
  Dataset data;
  data.Add({1.0}, 1);
  data.Add({2.0}, 1);
  LearnerConfig config;
  for (const char* kind : {"random_forest", "linear_svm", "logistic_regression"}) {
    EXPECT_THROW(TrainModel(kind, data, config, 1), DegenerateModelError) << kind;
  }
  EXPECT_THROW(TrainModel("nearest_neighbour", Blobs(1, 3), config, 1), ContractError);
}

TEST(LearnersTest, SameSeedSameModel) {
  Dataset data = testing::RandomDataset(8, 80, 5, 4);
  LearnerConfig config;
  for (const char* kind : {"random_forest", "linear_svm", "logistic_regression"}) {
    auto a = TrainModel(kind, data, config, 77);
    auto b = TrainModel(kind, data, config, 77);
    EXPECT_EQ(a->ToJson().dump(), b->ToJson().dump()) << kind;
  }
}

TEST(LearnersTest, SaveLoadPreservesPredictions) {
  Dataset data = testing::RandomDataset(2, 60, 4, 5);
  LearnerConfig config;
  const auto dir = std::filesystem::temp_directory_path() / "linelabel_learners_test";
  std::filesystem::create_directories(dir);
  Rng rng(6);
  for (const char* kind : {"random_forest", "linear_svm", "logistic_regression"}) {
    auto model = TrainModel(kind, data, config, 5);
    const auto path = dir / (std::string(kind) + ".json");
    SaveModel(path, *model);
    auto loaded = LoadModel(path);
    EXPECT_EQ(loaded->kind(), model->kind());
    for (int i = 0; i < 100; ++i) {
      std::vector<double> x(4);
      for (double& v : x) v = rng.Uniform() * 8 - 2;
      EXPECT_EQ(loaded->Score(x), model->Score(x)) << kind;
    }
  }
}

TEST(LinearSvmTest, OneDimensionalPairAndMonotoneScore) {
  auto model = TrainLinearSvm(OneDimensional(), LinearSvmParams{}, 3);
  EXPECT_EQ(model.Predict(std::vector<double>{-1.0}).label, 0);
  EXPECT_EQ(model.Predict(std::vector<double>{1.0}).label, 1);
  double prev = -1.0;
  for (double t = -3.0; t <= 3.0; t += 0.5) {
    const double s = model.Score(std::vector<double>{t});
    EXPECT_GE(s, prev);
    prev = s;
  }
}

TEST(LinearSvmTest, ConstantFeatureKeepsZeroWeight) {
  Dataset data = Blobs(11, 8);  // third feature is constant
  auto model = TrainLinearSvm(data, LinearSvmParams{}, 2);
  EXPECT_TRUE(model.scaler.IsConstant(2));
  EXPECT_EQ(model.weights[2], 0.0);
}

// The scaler sees only the rows the model is trained on.
TEST(ScalerTest, FitOnTrainingRowsOnly) {
  Dataset train = Blobs(12, 6);
  auto model = TrainLogisticRegression(train, LogisticRegressionParams{}, 1);
  Scaler expected = Scaler::Fit(train);
  EXPECT_EQ(model.scaler.mean, expected.mean);
  EXPECT_EQ(model.scaler.scale, expected.scale);
  double mean0 = 0.0;
  for (const auto& row : train.x) mean0 += row[0];
  EXPECT_NEAR(model.scaler.mean[0], mean0 / static_cast<double>(train.rows()), 1e-12);
}

TEST(LogisticRegressionTest, ProbabilitiesAreOrdered) {
  auto model = TrainLogisticRegression(OneDimensional(), LogisticRegressionParams{}, 3);
  const double lo = model.Score(std::vector<double>{-1.0});
  const double hi = model.Score(std::vector<double>{1.0});
  EXPECT_GT(hi, 0.5);
  EXPECT_LT(lo, 0.5);
  EXPECT_GT(lo, 0.0);
  EXPECT_LT(hi, 1.0);
}

TEST(LogisticRegressionTest, ZeroEpochsGivesOneHalf) {
  LogisticRegressionParams params;
  params.epochs = 0;
  auto model = TrainLogisticRegression(Blobs(5, 4), params, 3);
  EXPECT_DOUBLE_EQ(model.Score(std::vector<double>{1.0, 2.0, 7.0}), 0.5);
}

TEST(LogisticRegressionTest, GradientMatchesFiniteDifferences) {
  EXPECT_LT(testing::MaxLogisticGradientError(10, 21), 1e-5);
}

TEST(LearnerConfigTest, RejectsUnknownKeys) {
  Json json = LearnerConfig{}.ToJson();
  EXPECT_EQ(LearnerConfig::FromJson(json).ToJson(), json);
  json["random_forest"]["n_tree"] = 3;
  EXPECT_THROW(LearnerConfig::FromJson(json), ContractError);
}

}  // namespace
}  // namespace linelabel::ml
