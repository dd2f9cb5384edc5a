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


// Training cost of the committee members and of one query selection.

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "linelabel/active_learning.h"
#include "linelabel/learners.h"
#include "linelabel/random.h"

namespace {

namespace ml = linelabel::ml;

ml::Dataset Noisy(int rows) {
  linelabel::Rng rng(17);
  ml::Dataset data;
  for (int i = 0; i < rows; ++i) {
    std::vector<double> x(27);
    for (double& v : x) v = static_cast<double>(rng.Index(4));
    const int label = (x[0] + x[3] > 3) != rng.Bernoulli(0.1) ? 1 : 0;
    data.Add(std::move(x), label, "c" + std::to_string(i / 10) + ":f.c:post:" +
                                      std::to_string(i % 10 + 1));
  }
  return data;
}

void BM_Train(benchmark::State& state, const char* kind) {
  const ml::Dataset data = Noisy(static_cast<int>(state.range(0)));
  ml::LearnerConfig config;
  for (auto _ : state) {
    auto model = ml::TrainModel(kind, data, config, 1);
    benchmark::DoNotOptimize(model.get());
  }
}
BENCHMARK_CAPTURE(BM_Train, random_forest, "random_forest")->Arg(500)->Arg(2000);
BENCHMARK_CAPTURE(BM_Train, linear_svm, "linear_svm")->Arg(500)->Arg(2000);
BENCHMARK_CAPTURE(BM_Train, logistic_regression, "logistic_regression")->Arg(500)->Arg(2000);

void BM_SelectBatch(benchmark::State& state) {
  const ml::Dataset data = Noisy(static_cast<int>(state.range(0)));
  std::vector<linelabel::al::SessionRow> rows;
  for (size_t i = 0; i < data.rows(); ++i) rows.push_back({data.ids[i], data.x[i], data.y[i]});
  linelabel::al::SessionConfig config;
  config.learners.random_forest.n_trees = 30;
  auto session = linelabel::al::Session::Create(rows, config);
  for (auto _ : state) {
    const auto& batch = session.SelectBatch();
    benchmark::DoNotOptimize(batch.items.data());
    state.PauseTiming();
    session.ReleasePending();
    state.ResumeTiming();
  }
}
BENCHMARK(BM_SelectBatch)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
