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


#include "support/synthetic_benchmark.h"

#include <algorithm>

#include "linelabel/errors.h"
#include "linelabel/pipeline.h"

namespace linelabel::testing {

SyntheticBenchmark MakeSyntheticBenchmark(uint64_t corpus_seed, int commits,
                                          double holdout_fraction) {
  SyntheticBenchmark bench;
  bench.corpus = synth::GenerateCorpus(corpus_seed, commits);
  std::vector<CommitRecord> records;
  for (const auto& c : bench.corpus) records.push_back(c.record);
  CorpusFeatures features = FeaturizeCorpus(records);
  bench.warnings = features.warnings.size();
  std::map<std::string, int> labels;
  for (const auto& c : bench.corpus) labels.insert(c.labels.begin(), c.labels.end());
  for (const FeaturizedLine& line : features.lines) {
    al::SessionRow row;
    row.id = line.line.id();
    row.x.assign(line.features.begin(), line.features.end());
    auto it = labels.find(row.id);
    if (it == labels.end()) throw IntegrityError(row.id, "generated line has no label");
    row.reference = it->second;
    bench.positives += it->second;
    bench.rows.push_back(std::move(row));
  }
  bench.functions = MakeFunctionMap(features.lines);
  bench.holdout = al::SplitHoldoutByCommit(bench.rows, holdout_fraction, corpus_seed);
  return bench;
}

al::SessionConfig BenchmarkConfig(uint64_t session_seed, al::Strategy strategy) {
  al::SessionConfig config;
  config.base_fraction = 0.2;
  config.batch_size = 10;
  config.seed = session_seed;
  config.strategy = strategy;
  config.max_iterations = 100000;
  return config;
}

EndToEndResult RunEndToEnd(const SyntheticBenchmark& bench, uint64_t session_seed) {
  al::Session session = al::Session::Create(
      bench.rows, BenchmarkConfig(session_seed, al::Strategy::kCommittee), bench.holdout);
  al::RunSession(session, al::ReferenceOracle(session), al::Budget{});
  EndToEndResult result;
  result.base_f1 = session.base_metrics().f1;
  result.best_f1 = result.base_f1;
  for (const al::HistoryPoint& p : session.history()) {
    if (p.metrics.f1 > result.best_f1) {
      result.best_f1 = p.metrics.f1;
      result.labels_at_best = p.labels_added;
    }
  }
  result.final_f1 =
      session.history().empty() ? result.base_f1 : session.history().back().metrics.f1;
  result.iterations = session.iteration();
  result.labels = session.labels_added();
  return result;
}

double Median(std::vector<double> values) {
  if (values.empty()) return kNever;
  std::sort(values.begin(), values.end());
  const size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  const double a = values[n / 2 - 1];
  const double b = values[n / 2];
  if (a == kNever || b == kNever) return kNever;
  return (a + b) / 2.0;
}

EfficiencyResult RunEfficiency(const SyntheticBenchmark& bench, int seeds, int max_labels,
                               double target_f1) {
  EfficiencyResult result;
  const int batch = 10;
  for (int labels = batch; labels <= max_labels; labels += batch) result.points.push_back(labels);
  result.committee_mean_f1.assign(result.points.size(), 0.0);
  result.random_mean_f1.assign(result.points.size(), 0.0);

  for (int seed = 1; seed <= seeds; ++seed) {
    for (al::Strategy strategy : {al::Strategy::kCommittee, al::Strategy::kRandom}) {
      al::Session session = al::Session::Create(
          bench.rows, BenchmarkConfig(static_cast<uint64_t>(seed), strategy), bench.holdout);
      al::Budget budget;
      budget.max_labels = max_labels;
      al::RunSession(session, al::ReferenceOracle(session), budget);

      const bool committee = strategy == al::Strategy::kCommittee;
      auto reached = al::LabelsToReach(session, target_f1);
      (committee ? result.committee_labels : result.random_labels)
          .push_back(reached ? static_cast<double>(*reached) : kNever);

      // F1 at each evaluation point: the last history point with at most
      // that many labels.
      auto& mean = committee ? result.committee_mean_f1 : result.random_mean_f1;
      for (size_t i = 0; i < result.points.size(); ++i) {
        double f1 = session.base_metrics().f1;
        for (const al::HistoryPoint& p : session.history()) {
          if (p.labels_added <= result.points[i]) f1 = p.metrics.f1;
        }
        mean[i] += f1 / seeds;
      }
    }
  }
  result.committee_median = Median(result.committee_labels);
  result.random_median = Median(result.random_labels);
  for (size_t i = 0; i < result.points.size(); ++i) {
    if (result.committee_mean_f1[i] >= result.random_mean_f1[i]) ++result.committee_ahead;
  }
  return result;
}

}  // namespace linelabel::testing
