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


#include "support/golden.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "linelabel/commit.h"
#include "linelabel/errors.h"
#include "linelabel/features.h"

namespace linelabel::testing {
namespace {

using Key = std::string;  // "<path> <side>:<line>"

std::map<Key, FeatureVector> ReadExpected(const std::filesystem::path& file,
                                          std::vector<std::string>& problems) {
  std::map<Key, FeatureVector> out;
  std::ifstream in(file);
  if (!in) {
    problems.push_back(file.string() + ": missing");
    return out;
  }
  std::string text;
  while (std::getline(in, text)) {
    if (text.empty() || text[0] == '#') continue;
    std::istringstream fields(text);
    std::string path, where, item;
    fields >> path >> where;
    FeatureVector v{};
    while (fields >> item) {
      if (item == "-") continue;
      const auto eq = item.find('=');
      const int index = FeatureIndex(item.substr(0, eq));
      if (eq == std::string::npos || index < 0) {
        problems.push_back(file.string() + ": bad item '" + item + "'");
        continue;
      }
      v[static_cast<size_t>(index)] = std::stoi(item.substr(eq + 1));
    }
    out[path + " " + where] = v;
  }
  return out;
}

std::string Describe(const FeatureVector& v) {
  std::string out;
  for (int i = 0; i < kNumFeatures; ++i) {
    if (v[static_cast<size_t>(i)] == 0) continue;
    out += " " + std::string(FeatureName(i)) + "=" + std::to_string(v[static_cast<size_t>(i)]);
  }
  return out.empty() ? " -" : out;
}

}  // namespace

GoldenRun CheckFeatureGoldens(const std::filesystem::path& root) {
  GoldenRun run;
  std::vector<std::filesystem::path> dirs;
  for (const auto& entry : std::filesystem::directory_iterator(root)) {
    if (entry.is_directory()) dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());
  for (const auto& dir : dirs) {
    ++run.fixtures;
    const std::string name = dir.filename().string();
    auto expected = ReadExpected(dir / "expected_features.txt", run.mismatches);
    CommitFeatures got;
    try {
      got = FeaturizeCommit(LoadCommitDir(dir));
    } catch (const Error& e) {
      run.mismatches.push_back(name + ": " + e.what());
      continue;
    }
    for (const auto& w : got.warnings) {
      run.mismatches.push_back(name + ": warning " + w.message);
    }
    for (const FeaturizedLine& row : got.lines) {
      ++run.lines;
      const Key key = row.line.path + " " + std::string(SideName(row.line.side)) + ":" +
                      std::to_string(row.line.line_no);
      auto it = expected.find(key);
      if (it == expected.end()) {
        run.mismatches.push_back(name + " " + key + ": not in expected file, got" +
                                 Describe(row.features));
        continue;
      }
      if (it->second != row.features) {
        run.mismatches.push_back(name + " " + key + ": expected" + Describe(it->second) +
                                 " got" + Describe(row.features));
      }
      expected.erase(it);
    }
    for (const auto& [key, v] : expected) {
      run.mismatches.push_back(name + " " + key + ": expected but not a commit line");
    }
  }
  return run;
}

}  // namespace linelabel::testing
