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


#ifndef LINELABEL_TESTS_SUPPORT_SYNTHETIC_BENCHMARK_H_
#define LINELABEL_TESTS_SUPPORT_SYNTHETIC_BENCHMARK_H_

// The synthetic end-to-end protocol: a generated corpus featurized with
// reference labels, a fixed held-out split by commit, and sessions run
// against a simulated annotator.

#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "linelabel/active_learning.h"
#include "linelabel/labeling.h"
#include "linelabel/synth.h"

namespace linelabel::testing {

struct SyntheticBenchmark {
  std::vector<synth::SynthCommit> corpus;
  std::vector<al::SessionRow> rows;
  std::set<std::string> holdout;
  FunctionMap functions;
  size_t warnings = 0;
  int positives = 0;
};

SyntheticBenchmark MakeSyntheticBenchmark(uint64_t corpus_seed, int commits,
                                          double holdout_fraction = 0.4);

// Base fraction 0.2, batch 10, committee {random_forest, linear_svm}.
al::SessionConfig BenchmarkConfig(uint64_t session_seed, al::Strategy strategy);

struct EndToEndResult {
  double base_f1 = 0.0;
  double best_f1 = 0.0;
  int labels_at_best = 0;
  double final_f1 = 0.0;
  int iterations = 0;
  int labels = 0;
};

// Runs a committee session until the pool is exhausted.
EndToEndResult RunEndToEnd(const SyntheticBenchmark& bench, uint64_t session_seed);

struct EfficiencyResult {
  // Labels needed to reach the target per seed; infinity if never.
  std::vector<double> committee_labels;
  std::vector<double> random_labels;
  double committee_median = 0.0;
  double random_median = 0.0;
  std::vector<int> points;  // evaluation points (labels used)
  std::vector<double> committee_mean_f1;
  std::vector<double> random_mean_f1;
  int committee_ahead = 0;  // points where the committee mean is >= random
};

// Seeds 1..seeds, each running both strategies for max_labels labels.
EfficiencyResult RunEfficiency(const SyntheticBenchmark& bench, int seeds, int max_labels,
                               double target_f1);

// Median with infinities sorted last.
double Median(std::vector<double> values);

inline constexpr double kNever = std::numeric_limits<double>::infinity();

}  // namespace linelabel::testing

#endif  // LINELABEL_TESTS_SUPPORT_SYNTHETIC_BENCHMARK_H_
