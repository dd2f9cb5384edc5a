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
#include <numeric>

#include "linelabel/learners.h"
#include "linelabel/random.h"

namespace linelabel::ml {

namespace {

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

void FitPlattScaling(std::span<const double> margins, std::span<const int> labels, double* a,
                     double* b) {
  double n_pos = 0;
  double n_neg = 0;
  for (int y : labels) (y == 1 ? n_pos : n_neg) += 1;
  const double hi = (n_pos + 1.0) / (n_pos + 2.0);
  const double lo = 1.0 / (n_neg + 2.0);
  std::vector<double> t(labels.size());
  for (size_t i = 0; i < labels.size(); ++i) t[i] = labels[i] == 1 ? hi : lo;

  auto objective = [&](double pa, double pb) {
    double f = 0.0;
    for (size_t i = 0; i < t.size(); ++i) {
      const double z = pa * margins[i] + pb;
      // log(1 + e^z) - t z, evaluated stably
      const double softplus = z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
      f += softplus - t[i] * z;
    }
    return f;
  };

  double pa = 0.0;
  double pb = std::log((n_pos + 1.0) / (n_neg + 1.0));
  double f = objective(pa, pb);
  constexpr double kRidge = 1e-12;
  for (int iter = 0; iter < 100; ++iter) {
    double g1 = 0, g2 = 0, h11 = kRidge, h22 = kRidge, h21 = 0;
    for (size_t i = 0; i < t.size(); ++i) {
      const double p = Sigmoid(pa * margins[i] + pb);
      const double d1 = p - t[i];
      const double d2 = p * (1.0 - p);
      g1 += margins[i] * d1;
      g2 += d1;
      h11 += margins[i] * margins[i] * d2;
      h22 += d2;
      h21 += margins[i] * d2;
    }
    if (std::abs(g1) < 1e-5 && std::abs(g2) < 1e-5) break;
    const double det = h11 * h22 - h21 * h21;
    const double da = -(h22 * g1 - h21 * g2) / det;
    const double db = -(-h21 * g1 + h11 * g2) / det;
    const double gd = g1 * da + g2 * db;
    double step = 1.0;
    bool moved = false;
    while (step >= 1e-10) {
      const double na = pa + step * da;
      const double nb = pb + step * db;
      const double nf = objective(na, nb);
      if (nf < f + 1e-4 * step * gd) {
        pa = na;
        pb = nb;
        f = nf;
        moved = true;
        break;
      }
      step /= 2.0;
    }
    if (!moved) break;
  }
  if (pa < 0.0) {
    // A decreasing link would invert the classifier; fall back to the
    // best constant score.
    double mean_t = 0.0;
    for (double v : t) mean_t += v;
    mean_t /= static_cast<double>(t.size());
    pa = 0.0;
    pb = std::log(mean_t / (1.0 - mean_t));
  }
  *a = pa;
  *b = pb;
}

double LinearSvmModel::Margin(std::span<const double> x) const {
  const std::vector<double> z = scaler.Transform(x);
  return Dot(weights, z) + bias;
}

double LinearSvmModel::Score(std::span<const double> x) const {
  return Sigmoid(platt_a * Margin(x) + platt_b);
}

LinearSvmModel TrainLinearSvm(const Dataset& data, const LinearSvmParams& params,
                              uint64_t seed) {
  CheckTrainable(data);
  LinearSvmModel model;
  model.params = params;
  model.seed = seed;
  model.scaler = Scaler::Fit(data);
  const size_t n = data.rows();
  const size_t d = data.dims();
  std::vector<std::vector<double>> z(n);
  for (size_t r = 0; r < n; ++r) z[r] = model.scaler.Transform(data.x[r]);
  const std::vector<double> sw = SampleWeights(data, params.balanced);

  // The bias is learned as the weight of a constant input of 1 and is
  // regularised with the other weights.
  std::vector<double> w(d, 0.0);
  double b = 0.0;
  const double lambda = params.lambda;
  const double radius = 1.0 / std::sqrt(lambda);
  Rng rng(seed);
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  uint64_t t = 0;
  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    rng.Shuffle(order);
    for (size_t r : order) {
      ++t;
      const double eta = 1.0 / (lambda * static_cast<double>(t));
      const double y = data.y[r] == 1 ? 1.0 : -1.0;
      const double margin = Dot(w, z[r]) + b;
      const double decay = 1.0 - eta * lambda;
      for (double& wj : w) wj *= decay;
      b *= decay;
      if (y * margin < 1.0) {
        const double step = eta * y * sw[r];
        for (size_t j = 0; j < d; ++j) w[j] += step * z[r][j];
        b += step;
      }
      const double norm = std::sqrt(Dot(w, w) + b * b);
      if (norm > radius) {
        const double shrink = radius / norm;
        for (double& wj : w) wj *= shrink;
        b *= shrink;
      }
    }
  }
  for (size_t j = 0; j < d; ++j) {
    if (model.scaler.IsConstant(j)) w[j] = 0.0;
  }
  model.weights = std::move(w);
  model.bias = b;

  std::vector<double> margins(n);
  for (size_t r = 0; r < n; ++r) margins[r] = Dot(model.weights, z[r]) + model.bias;
  FitPlattScaling(margins, data.y, &model.platt_a, &model.platt_b);
  return model;
}

Json LinearSvmModel::ToJson() const {
  Json j;
  j["format_version"] = kModelFormatVersion;
  j["kind"] = std::string(kind());
  j["params"] = params.ToJson();
  j["seed"] = seed;
  j["scaler"] = scaler.ToJson();
  j["weights"] = weights;
  j["bias"] = bias;
  j["platt_a"] = platt_a;
  j["platt_b"] = platt_b;
  return j;
}

LinearSvmModel LinearSvmModel::FromJson(const Json& json) {
  LinearSvmModel m;
  m.params = LinearSvmParams::FromJson(json.at("params"));
  m.seed = json.at("seed").get<uint64_t>();
  m.scaler = Scaler::FromJson(json.at("scaler"));
  m.weights = json.at("weights").get<std::vector<double>>();
  m.bias = json.at("bias").get<double>();
  m.platt_a = json.at("platt_a").get<double>();
  m.platt_b = json.at("platt_b").get<double>();
  return m;
}

}  // namespace linelabel::ml
