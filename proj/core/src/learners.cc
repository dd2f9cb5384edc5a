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
#include <cmath>
#include <fstream>

#include "linelabel/errors.h"
#include "linelabel/learners.h"

namespace linelabel::ml {

void Dataset::Add(std::vector<double> features, int label, std::string id) {
  x.push_back(std::move(features));
  y.push_back(label);
  ids.push_back(std::move(id));
}

Dataset Dataset::Subset(std::span<const size_t> rows) const {
  Dataset out;
  for (size_t r : rows) {
    out.x.push_back(x[r]);
    out.y.push_back(y[r]);
    out.ids.push_back(r < ids.size() ? ids[r] : std::string());
  }
  return out;
}

size_t Dataset::CountPositive() const {
  return static_cast<size_t>(std::count(y.begin(), y.end(), 1));
}

void CheckTrainable(const Dataset& data) {
  if (data.y.size() != data.x.size()) {
    throw ContractError("dataset has " + std::to_string(data.x.size()) + " rows but " +
                        std::to_string(data.y.size()) + " labels");
  }
  const size_t dims = data.dims();
  for (size_t r = 0; r < data.rows(); ++r) {
    if (data.x[r].size() != dims) throw ContractError("ragged feature matrix");
    if (data.y[r] != 0 && data.y[r] != 1) {
      throw ContractError("label " + std::to_string(data.y[r]) + " is not binary");
    }
  }
  const size_t pos = data.CountPositive();
  if (data.rows() < 2 || pos == 0 || pos == data.rows()) {
    throw DegenerateModelError("training data needs at least one row of each class (" +
                               std::to_string(pos) + " positive of " +
                               std::to_string(data.rows()) + ")");
  }
}

Scaler Scaler::Fit(const Dataset& data) {
  Scaler s;
  const size_t d = data.dims();
  const double n = static_cast<double>(data.rows());
  s.mean.assign(d, 0.0);
  s.scale.assign(d, 0.0);
  for (const auto& row : data.x) {
    for (size_t j = 0; j < d; ++j) s.mean[j] += row[j];
  }
  for (size_t j = 0; j < d; ++j) s.mean[j] /= n;
  for (const auto& row : data.x) {
    for (size_t j = 0; j < d; ++j) {
      const double dev = row[j] - s.mean[j];
      s.scale[j] += dev * dev;
    }
  }
  for (size_t j = 0; j < d; ++j) {
    const double sd = std::sqrt(s.scale[j] / n);
    s.scale[j] = sd > 1e-12 ? sd : 0.0;
  }
  return s;
}

std::vector<double> Scaler::Transform(std::span<const double> x) const {
  std::vector<double> out(x.size(), 0.0);
  for (size_t j = 0; j < x.size(); ++j) {
    if (scale[j] != 0.0) out[j] = (x[j] - mean[j]) / scale[j];
  }
  return out;
}

Json Scaler::ToJson() const {
  Json j;
  j["mean"] = mean;
  j["scale"] = scale;
  return j;
}

Scaler Scaler::FromJson(const Json& json) {
  Scaler s;
  s.mean = json.at("mean").get<std::vector<double>>();
  s.scale = json.at("scale").get<std::vector<double>>();
  return s;
}

std::vector<double> SampleWeights(const Dataset& data, bool balanced) {
  std::vector<double> w(data.rows(), 1.0);
  if (!balanced) return w;
  const double n = static_cast<double>(data.rows());
  const double pos = static_cast<double>(data.CountPositive());
  const double neg = n - pos;
  for (size_t r = 0; r < data.rows(); ++r) {
    w[r] = data.y[r] == 1 ? n / (2.0 * pos) : n / (2.0 * neg);
  }
  return w;
}

Json Metrics::ToJson() const {
  Json j;
  j["tp"] = tp;
  j["fp"] = fp;
  j["fn"] = fn;
  j["tn"] = tn;
  j["precision"] = precision;
  j["recall"] = recall;
  j["f1"] = f1;
  return j;
}

Metrics Metrics::FromJson(const Json& json) {
  Metrics m;
  m.tp = json.at("tp").get<int>();
  m.fp = json.at("fp").get<int>();
  m.fn = json.at("fn").get<int>();
  m.tn = json.at("tn").get<int>();
  m.precision = json.at("precision").get<double>();
  m.recall = json.at("recall").get<double>();
  m.f1 = json.at("f1").get<double>();
  return m;
}

Metrics ComputeMetrics(std::span<const int> truth, std::span<const int> predicted) {
  if (truth.size() != predicted.size()) {
    throw ContractError("metrics: label and prediction counts differ");
  }
  Metrics m;
  for (size_t i = 0; i < truth.size(); ++i) {
    if (predicted[i] == 1) {
      truth[i] == 1 ? ++m.tp : ++m.fp;
    } else {
      truth[i] == 1 ? ++m.fn : ++m.tn;
    }
  }
  if (m.tp + m.fp > 0) m.precision = static_cast<double>(m.tp) / (m.tp + m.fp);
  if (m.tp + m.fn > 0) m.recall = static_cast<double>(m.tp) / (m.tp + m.fn);
  if (m.precision + m.recall > 0) {
    m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
  }
  return m;
}

Metrics Evaluate(const Classifier& model, const Dataset& data) {
  std::vector<int> predicted;
  predicted.reserve(data.rows());
  for (const auto& row : data.x) predicted.push_back(model.Predict(row).label);
  return ComputeMetrics(data.y, predicted);
}

namespace {

void RejectUnknownKeys(const Json& json, std::initializer_list<std::string_view> known,
                       std::string_view where) {
  for (auto it = json.begin(); it != json.end(); ++it) {
    if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
      throw ContractError("unknown key '" + it.key() + "' in " + std::string(where));
    }
  }
}

}  // namespace

Json RandomForestParams::ToJson() const {
  Json j;
  j["n_trees"] = n_trees;
  j["max_depth"] = max_depth;
  j["min_leaf"] = min_leaf;
  j["mtry"] = mtry;
  j["bootstrap"] = bootstrap;
  j["balanced"] = balanced;
  return j;
}

RandomForestParams RandomForestParams::FromJson(const Json& json) {
  RejectUnknownKeys(json, {"n_trees", "max_depth", "min_leaf", "mtry", "bootstrap", "balanced"},
                    "random_forest");
  RandomForestParams p;
  p.n_trees = json.value("n_trees", p.n_trees);
  p.max_depth = json.value("max_depth", p.max_depth);
  p.min_leaf = json.value("min_leaf", p.min_leaf);
  p.mtry = json.value("mtry", p.mtry);
  p.bootstrap = json.value("bootstrap", p.bootstrap);
  p.balanced = json.value("balanced", p.balanced);
  if (p.n_trees < 1 || p.max_depth < 0 || p.min_leaf < 1) {
    throw ContractError("random_forest: n_trees and min_leaf must be >= 1, max_depth >= 0");
  }
  return p;
}

Json LinearSvmParams::ToJson() const {
  Json j;
  j["lambda"] = lambda;
  j["epochs"] = epochs;
  j["balanced"] = balanced;
  return j;
}

LinearSvmParams LinearSvmParams::FromJson(const Json& json) {
  RejectUnknownKeys(json, {"lambda", "epochs", "balanced"}, "linear_svm");
  LinearSvmParams p;
  p.lambda = json.value("lambda", p.lambda);
  p.epochs = json.value("epochs", p.epochs);
  p.balanced = json.value("balanced", p.balanced);
  if (!(p.lambda > 0) || p.epochs < 0) {
    throw ContractError("linear_svm: lambda must be > 0 and epochs >= 0");
  }
  return p;
}

Json LogisticRegressionParams::ToJson() const {
  Json j;
  j["learning_rate"] = learning_rate;
  j["epochs"] = epochs;
  j["l2"] = l2;
  j["balanced"] = balanced;
  return j;
}

LogisticRegressionParams LogisticRegressionParams::FromJson(const Json& json) {
  RejectUnknownKeys(json, {"learning_rate", "epochs", "l2", "balanced"}, "logistic_regression");
  LogisticRegressionParams p;
  p.learning_rate = json.value("learning_rate", p.learning_rate);
  p.epochs = json.value("epochs", p.epochs);
  p.l2 = json.value("l2", p.l2);
  p.balanced = json.value("balanced", p.balanced);
  if (!(p.learning_rate > 0) || p.epochs < 0 || p.l2 < 0) {
    throw ContractError("logistic_regression: learning_rate > 0, epochs >= 0, l2 >= 0");
  }
  return p;
}

Json LearnerConfig::ToJson() const {
  Json j;
  j["random_forest"] = random_forest.ToJson();
  j["linear_svm"] = linear_svm.ToJson();
  j["logistic_regression"] = logistic_regression.ToJson();
  return j;
}

LearnerConfig LearnerConfig::FromJson(const Json& json) {
  RejectUnknownKeys(json, {"random_forest", "linear_svm", "logistic_regression"}, "learners");
  LearnerConfig c;
  if (json.contains("random_forest")) {
    c.random_forest = RandomForestParams::FromJson(json["random_forest"]);
  }
  if (json.contains("linear_svm")) c.linear_svm = LinearSvmParams::FromJson(json["linear_svm"]);
  if (json.contains("logistic_regression")) {
    c.logistic_regression = LogisticRegressionParams::FromJson(json["logistic_regression"]);
  }
  return c;
}

std::unique_ptr<Classifier> TrainModel(std::string_view kind, const Dataset& data,
                                       const LearnerConfig& config, uint64_t seed) {
  if (kind == "random_forest") {
    return std::make_unique<RandomForestModel>(
        TrainRandomForest(data, config.random_forest, seed));
  }
  if (kind == "linear_svm") {
    return std::make_unique<LinearSvmModel>(TrainLinearSvm(data, config.linear_svm, seed));
  }
  if (kind == "logistic_regression") {
    return std::make_unique<LogisticRegressionModel>(
        TrainLogisticRegression(data, config.logistic_regression, seed));
  }
  throw ContractError("unknown model kind '" + std::string(kind) + "'");
}

std::unique_ptr<Classifier> ModelFromJson(const Json& json) {
  if (json.value("format_version", -1) != kModelFormatVersion) {
    throw IntegrityError("model", "unsupported model format version");
  }
  const std::string kind = json.at("kind").get<std::string>();
  if (kind == "random_forest") {
    return std::make_unique<RandomForestModel>(RandomForestModel::FromJson(json));
  }
  if (kind == "linear_svm") {
    return std::make_unique<LinearSvmModel>(LinearSvmModel::FromJson(json));
  }
  if (kind == "logistic_regression") {
    return std::make_unique<LogisticRegressionModel>(LogisticRegressionModel::FromJson(json));
  }
  throw IntegrityError("model", "unknown model kind '" + kind + "'");
}

void SaveModel(const std::filesystem::path& path, const Classifier& model) {
  WriteFileAtomic(path, model.ToJson().dump(1) + "\n");
}

std::unique_ptr<Classifier> LoadModel(const std::filesystem::path& path) {
  Json json;
  try {
    json = Json::parse(ReadFile(path));
  } catch (const Json::exception& e) {
    throw IntegrityError(path.string(), std::string("malformed model file: ") + e.what());
  }
  try {
    return ModelFromJson(json);
  } catch (const Json::exception& e) {
    throw IntegrityError(path.string(), std::string("malformed model file: ") + e.what());
  }
}

}  // namespace linelabel::ml
