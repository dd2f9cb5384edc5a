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


#ifndef LINELABEL_TESTS_SUPPORT_GOLDEN_H_
#define LINELABEL_TESTS_SUPPORT_GOLDEN_H_

#include <filesystem>
#include <string>
#include <vector>

namespace linelabel::testing {

struct GoldenRun {
  int fixtures = 0;
  int lines = 0;
  std::vector<std::string> mismatches;
};

// Featurizes every commit directory under `root` and compares each line
// against the directory's expected_features.txt. That file lists every
// commit line as "<path> <side>:<line> name=value ..." with the non-zero
// features only, or "-" when all 27 are zero.
GoldenRun CheckFeatureGoldens(const std::filesystem::path& root);

}  // namespace linelabel::testing

#endif  // LINELABEL_TESTS_SUPPORT_GOLDEN_H_
