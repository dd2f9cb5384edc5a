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

#ifndef LINELABEL_TESTS_SUPPORT_ANALYSIS_ORACLES_H_
#define LINELABEL_TESTS_SUPPORT_ANALYSIS_ORACLES_H_

// Brute-force reference implementations of the code-model analyses. They
// work from path definitions over the CFG and share no code with the
// production algorithms.

#include <cstdint>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "linelabel/code_model.h"

namespace linelabel::testing {

// pd[b][a] is true when every path from a to exit passes through b
// (reflexive). Removes b and checks whether exit is still reachable.
std::vector<std::vector<bool>> BrutePostDominance(const minic::Cfg& cfg);

// Same relation as the greatest fixpoint of
// PD(n) = {n} + intersection of PD(s) over successors s.
std::vector<std::vector<bool>> FixpointPostDominance(const minic::Cfg& cfg);

// y depends on x when x has a successor s with y post-dominating s and y
// does not strictly post-dominate x. `pd` as returned above.
std::set<std::pair<int, int>> BruteControlDependence(
    const minic::Cfg& cfg, const std::vector<std::vector<bool>>& pd);

// (def node, variable) pairs reaching the entry of each node: a def at n
// reaches m when some path n -> ... -> m of length >= 1 has no other
// definition of the variable strictly inside it.
std::vector<std::set<std::pair<int, int>>> BruteReachingDefinitions(
    const minic::Cfg& cfg, const std::vector<minic::NodeAccess>& access);

// (def node, use node, variable) def-use edges.
std::set<std::tuple<int, int, int>> BruteDataDependence(
    const minic::Cfg& cfg, const std::vector<minic::NodeAccess>& access);

// Compares every analysis of `fn` against the
// oracles. Returns "" on agreement, else a description of the first
// mismatch.
std::string CheckFunctionAnalyses(const minic::FunctionModel& fn);

struct OracleRun {
  int functions = 0;
  int max_nodes = 0;
  int failures = 0;
  std::string first_failure;
};

// Generates random functions until `count` of them have a CFG of at most
// `max_nodes` nodes and checks each one.
OracleRun RunAnalysisOracles(int count, int max_nodes, uint64_t seed);

}  // namespace linelabel::testing

#endif  // LINELABEL_TESTS_SUPPORT_ANALYSIS_ORACLES_H_
