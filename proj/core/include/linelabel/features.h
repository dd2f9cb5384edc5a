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

#ifndef LINELABEL_FEATURES_H_
#define LINELABEL_FEATURES_H_

// The 27 per-line features used to classify commit lines. Feature values
// are non-negative integers (flags are 0/1); no source text is kept.

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "linelabel/code_model.h"
#include "linelabel/commit.h"
#include "linelabel/jsonl.h"

namespace linelabel {

inline constexpr int kFeatureSchemaVersion = 1;
inline constexpr int kNumFeatures = 27;

enum Feature : int {
  // Properties of the line itself.
  kAssignment,
  kComparator,
  kArithmetic,
  kLogical,
  kFlagVar,
  kHasLiteral,
  kIsLocal,
  kHasRet,
  kFuncCall,
  // Relations to the other lines of the same commit.
  kControlDepend,
  kDepends,
  kRepeated,
  kRepeatedCall,
  kRepeatedControl,
  // Relations to the surrounding unchanged code.
  kControlBlock,
  kDoBlock,
  kIfBlock,
  kElseBlock,
  kSwitchBlock,
  kTryBlock,
  kForBlock,
  kWhileBlock,
  kDependedBy,
  kControlledBy,
  kReachableOutside,
  kPostDominatedBy,
  kPostDominates,
};

enum class FeatureGroup { kCommitLine, kWithinCommit, kCommitContext };
enum class FeatureType { kFlag, kCount };

struct FeatureInfo {
  std::string_view name;
  FeatureGroup group;
  FeatureType type;
};

// Fixed, versioned feature order.
std::span<const FeatureInfo, kNumFeatures> FeatureSchema();
std::string_view FeatureName(int feature);
// Index of `name` in the schema, or -1.
int FeatureIndex(std::string_view name);

using FeatureVector = std::array<int32_t, kNumFeatures>;

// Parsed snapshots of one commit, keyed by (path, side). A missing entry
// means the snapshot is absent or failed to parse.
using SnapshotModels =
    std::map<std::pair<std::string, Side>, std::shared_ptr<const minic::SourceUnit>>;

// Line-local features (first group); other fields are zero. `model` must
// be the snapshot of line.side.
FeatureVector ExtractLineFeatures(const CommitLine& line, const minic::SourceUnit& model);

// Features relating `line` to the other lines of its commit (second
// group). Dependence-based fields only consider lines of the same file
// and side.
FeatureVector ExtractIntraCommitFeatures(const CommitLine& line,
                                         std::span<const CommitLine> all_lines,
                                         const SnapshotModels& models);

// Features relating `line` to unchanged code (third group).
// `commit_lines` holds the line numbers of all commit lines of the same
// file and side.
FeatureVector ExtractContextFeatures(const CommitLine& line, const minic::SourceUnit& model,
                                     const std::set<int>& commit_lines);

// Blank, comment-only and brace-only lines carry no features.
bool IsCodeLine(const minic::SourceUnit& model, int line);

// Name of the function whose extent contains the line, or "".
std::string EnclosingFunction(const minic::SourceUnit& model, int line);

struct FeatureWarning {
  std::string commit_id;
  std::string path;
  Side side = Side::kPost;
  std::string kind;  // error kind, e.g. "parse"
  std::string message;
};

struct FeaturizedLine {
  CommitLine line;
  FeatureVector features{};
  std::string function;  // enclosing function in the line's snapshot
};

struct CommitFeatures {
  std::vector<FeaturizedLine> lines;
  std::vector<FeatureWarning> warnings;
};

// Parses every snapshot that has commit lines. Snapshots that fail to
// parse are reported as warnings and left out of the map.
SnapshotModels BuildSnapshotModels(const CommitRecord& record,
                                   std::vector<FeatureWarning>* warnings);

// Features for every commit line of parsable snapshots, in
// EnumerateCommitLines order.
CommitFeatures FeaturizeCommit(const CommitRecord& record);
CommitFeatures FeaturizeCommit(const CommitRecord& record, const SnapshotModels& models);

// Export record: id, schema_version, the 27 named fields, and `label`
// when given.
Json FeatureRecordToJson(const std::string& id, const FeatureVector& features,
                         std::optional<int> label = std::nullopt);
// Throws IntegrityError on a schema version mismatch or missing field.
FeatureVector FeatureVectorFromJson(const Json& record);
Json FeatureWarningToJson(const FeatureWarning& warning);

}  // namespace linelabel

#endif  // LINELABEL_FEATURES_H_
