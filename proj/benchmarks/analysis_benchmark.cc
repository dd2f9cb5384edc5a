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


// Parsing, graph construction and featurization throughput on synthetic
// commits.

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "linelabel/code_model.h"
#include "linelabel/features.h"
#include "linelabel/synth.h"

namespace {

using linelabel::synth::Category;

const std::vector<linelabel::synth::SynthCommit>& Corpus() {
  static const auto corpus = linelabel::synth::GenerateCorpus(3, 32);
  return corpus;
}

void BM_BuildSourceUnit(benchmark::State& state) {
  std::vector<std::string> sources;
  for (const auto& c : Corpus()) {
    for (const auto& f : c.record.files) {
      if (f.post_text) sources.push_back(*f.post_text);
    }
  }
  size_t bytes = 0;
  for (auto _ : state) {
    for (const std::string& s : sources) {
      auto unit = linelabel::minic::BuildSourceUnit(s);
      benchmark::DoNotOptimize(unit.functions.size());
      bytes += s.size();
    }
  }
  state.SetBytesProcessed(static_cast<int64_t>(bytes));
}
BENCHMARK(BM_BuildSourceUnit);

void BM_FeaturizeCommit(benchmark::State& state) {
  const auto commit = linelabel::synth::GenerateCommit(5, "bench", Category::kTangled);
  size_t lines = 0;
  for (auto _ : state) {
    auto out = linelabel::FeaturizeCommit(commit.record);
    lines += out.lines.size();
    benchmark::DoNotOptimize(out.lines.data());
  }
  state.SetItemsProcessed(static_cast<int64_t>(lines));
}
BENCHMARK(BM_FeaturizeCommit);

}  // namespace
