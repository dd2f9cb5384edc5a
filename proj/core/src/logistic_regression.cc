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

#include <cmath>

#include "linelabel/errors.h"
#include "linelabel/learners.h"

namespace linelabel::ml {

namespace {

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double Softplus(double z) {
  return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

}  // namespace

double LogisticObjective(const std::vector<std::vector<double>>& x, std::span<const int> y,
                         std::span<const double> sample_weight, std::span<const double> w,
                         double b, double l2, std::vector<double>* gradient) {
  const size_t d = w.size();
  double total_weight = 0.0;
  for (double sw : sample_weight) total_weight += sw;
  if (gradient) gradient->assign(d + 1, 0.0);
  double loss = 0.0;
  for (size_t r = 0; r < x.size(); ++r) {
    double z = b;
    for (size_t j = 0; j < d; ++j) z += w[j] * x[r][j];
    const double yr = y[r] == 1 ? 1.0 : 0.0;
    loss += sample_weight[r] * (Softplus(z) - yr * z);
    if (gradient) {
      const double residual = sample_weight[r] * (Sigmoid(z) - yr);
      for (size_t j = 0; j < d; ++j) (*gradient)[j] += residual * x[r][j];
      (*gradient)[d] += residual;
    }
  }
  loss /= total_weight;
  double norm = 0.0;
  for (double wj : w) norm += wj * wj;
  loss += 0.5 * l2 * norm;
  if (gradient) {
    for (size_t j = 0; j <= d; ++j) (*gradient)[j] /= total_weight;
    for (size_t j = 0; j < d; ++j) (*gradient)[j] += l2 * w[j];
  }
  return loss;
}

double LogisticRegressionModel::Score(std::span<const double> x) const {
  const std::vector<double> z = scaler.Transform(x);
  double s = bias;
  for (size_t j = 0; j < z.size(); ++j) s += weights[j] * z[j];
  return Sigmoid(s);
}

LogisticRegressionModel TrainLogisticRegression(const Dataset& data,
                                                const LogisticRegressionParams& params,
                                                uint64_t seed) {
  CheckTrainable(data);
  LogisticRegressionModel model;
  model.params = params;
  model.seed = seed;
  model.scaler = Scaler::Fit(data);
  const size_t d = data.dims();
  std::vector<std::vector<double>> z;
  z.reserve(data.rows());
  for (const auto& row : data.x) z.push_back(model.scaler.Transform(row));
  const std::vector<double> sw = SampleWeights(data, params.balanced);
  model.weights.assign(d, 0.0);
  model.bias = 0.0;
  std::vector<double> grad;
  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    LogisticObjective(z, data.y, sw, model.weights, model.bias, params.l2, &grad);
    for (size_t j = 0; j < d; ++j) model.weights[j] -= params.learning_rate * grad[j];
    model.bias -= params.learning_rate * grad[d];
  }
  return model;
}

Json LogisticRegressionModel::ToJson() const {
  Json j;
  j["format_version"] = kModelFormatVersion;
  j["kind"] = std::string(kind());
  j["params"] = params.ToJson();
  j["seed"] = seed;
  j["scaler"] = scaler.ToJson();
  j["weights"] = weights;
  j["bias"] = bias;
  return j;
}

LogisticRegressionModel LogisticRegressionModel::FromJson(const Json& json) {
  LogisticRegressionModel m;
  m.params = LogisticRegressionParams::FromJson(json.at("params"));
  m.seed = json.at("seed").get<uint64_t>();
  m.scaler = Scaler::FromJson(json.at("scaler"));
  m.weights = json.at("weights").get<std::vector<double>>();
  m.bias = json.at("bias").get<double>();
  return m;
}

}  // namespace linelabel::ml
