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


#include "linelabel/features.h"

#include <gtest/gtest.h>

#include <string>
#include <type_traits>
#include <vector>

#include "linelabel/errors.h"
#include "linelabel/random.h"
#include "support/golden.h"
#include "support/random_program.h"

namespace linelabel {
namespace {

// The vector is numeric only, so no identifier or source text can leak
// into it.
static_assert(std::is_same_v<FeatureVector::value_type, int32_t>);
static_assert(std::tuple_size_v<FeatureVector> == kNumFeatures);

constexpr int kBlockFlags[] = {kDoBlock, kIfBlock,  kElseBlock, kSwitchBlock,
                               kTryBlock, kForBlock, kWhileBlock};

CommitRecord OneFileCommit(const std::string& pre, const std::string& post) {
  CommitRecord record;
  record.commit_id = "t1";
  record.files.push_back(MakeFilePair("f.c", pre, post));
  return record;
}

const FeaturizedLine& LineAt(const CommitFeatures& out, Side side, int line_no) {
  for (const FeaturizedLine& l : out.lines) {
    if (l.line.side == side && l.line.line_no == line_no) return l;
  }
  throw std::runtime_error("no commit line " + std::to_string(line_no));
}

TEST(FeatureSchemaTest, NamesAndGroups) {
  auto schema = FeatureSchema();
  EXPECT_EQ(schema[kAssignment].name, "assignment");
  EXPECT_EQ(schema[kPostDominates].name, "postDominates");
  int groups[3] = {0, 0, 0};
  for (int i = 0; i < kNumFeatures; ++i) {
    EXPECT_EQ(FeatureIndex(FeatureName(i)), i);
    ++groups[static_cast<int>(schema[static_cast<size_t>(i)].group)];
  }
  EXPECT_EQ(groups[0], 9);
  EXPECT_EQ(groups[1], 5);
  EXPECT_EQ(groups[2], 13);
  EXPECT_EQ(FeatureIndex("nonsense"), -1);
}

TEST(FeatureJsonTest, RoundTripAndVersionCheck) {
  FeatureVector v{};
  for (int i = 0; i < kNumFeatures; ++i) v[static_cast<size_t>(i)] = i % 4;
  Json record = FeatureRecordToJson("c:f.c:post:3", v, 1);
  EXPECT_EQ(record.size(), static_cast<size_t>(kNumFeatures) + 3);
  EXPECT_EQ(FeatureVectorFromJson(record), v);
  record["schema_version"] = kFeatureSchemaVersion + 1;
  EXPECT_THROW(FeatureVectorFromJson(record), IntegrityError);
}

TEST(FeaturizeTest, ReturnLiteralHasOnlyHasRet) {
  auto out = FeaturizeCommit(OneFileCommit("int f() {\n  return 1;\n}\n",
                                           "int f() {\n  return 0;\n}\n"));
  ASSERT_EQ(out.lines.size(), 2u);
  const FeatureVector& v = LineAt(out, Side::kPost, 2).features;
  for (int i = 0; i < 9; ++i) EXPECT_EQ(v[static_cast<size_t>(i)], i == kHasRet) << i;
  EXPECT_EQ(LineAt(out, Side::kPost, 2).function, "f");
}

TEST(FeaturizeTest, OperatorsCountedOnTheAst) {
  auto out = FeaturizeCommit(OneFileCommit(
      "int f(int a) {\n  return 0;\n}\n",
      "int f(int a) {\n  if (a == 1 && a - 2 > -3) a++;\n  return 0;\n}\n"));
  const FeatureVector& v = LineAt(out, Side::kPost, 2).features;
  EXPECT_EQ(v[kComparator], 2);
  EXPECT_EQ(v[kLogical], 1);
  EXPECT_EQ(v[kArithmetic], 2);  // '-' and '++'; unary minus does not count
  EXPECT_EQ(v[kAssignment], 0);
  EXPECT_EQ(v[kIsLocal], 1);
}

TEST(FeaturizeTest, GuardedUseIsControlDependentOnTheGuard) {
  auto out = FeaturizeCommit(OneFileCommit(
      "int g;\nvoid f(int count) {\n  g = 1;\n}\n",
      "int g;\nvoid f(int count) {\n  if (count != 0) {\n    g = g / count;\n  }\n"
      "  g = 1;\n}\n"));
  const FeatureVector& use = LineAt(out, Side::kPost, 4).features;
  EXPECT_EQ(use[kControlDepend], 1);
  EXPECT_EQ(use[kIfBlock], 1);
  EXPECT_EQ(use[kControlBlock], 1);
  EXPECT_EQ(use[kControlledBy], 1);
  EXPECT_EQ(LineAt(out, Side::kPost, 3).features[kComparator], 1);
  // The closing brace is not code.
  EXPECT_EQ(LineAt(out, Side::kPost, 5).features, FeatureVector{});
}

TEST(FeaturizeTest, GlobalScopeLinesHaveNoContext) {
  auto out = FeaturizeCommit(OneFileCommit("int a;\n", "int a;\nint b = 2;\n"));
  const FeatureVector& v = LineAt(out, Side::kPost, 2).features;
  for (int i = kControlBlock; i < kNumFeatures; ++i) EXPECT_EQ(v[static_cast<size_t>(i)], 0);
}

TEST(FeaturizeTest, ParseFailureWarnsAndSkipsOnlyThatFile) {
  CommitRecord record = OneFileCommit("int f() {\n  return 1;\n}\n",
                                      "int f() {\n  return 2;\n}\n");
  record.files.push_back(MakeFilePair("bad.c", std::string("int x;\n"),
                                      std::string("int x;\nint y = ;\n")));
  auto out = FeaturizeCommit(record);
  ASSERT_EQ(out.warnings.size(), 1u);
  EXPECT_EQ(out.warnings[0].path, "bad.c");
  EXPECT_EQ(out.warnings[0].kind, "parse");
  EXPECT_EQ(out.lines.size(), 2u);
}

TEST(FeaturizeTest, EmptyCommitHasNoLines) {
  CommitRecord record;
  record.commit_id = "empty";
  EXPECT_TRUE(FeaturizeCommit(record).lines.empty());
}

TEST(FeatureGoldenTest, FixturesMatchHandDerivedVectors) {
  auto run = testing::CheckFeatureGoldens(std::filesystem::path(LINELABEL_FIXTURE_DIR) /
                                          "features");
  EXPECT_GE(run.fixtures, 25);
  EXPECT_GT(run.lines, 0);
  for (const std::string& m : run.mismatches) ADD_FAILURE() << m;
}

// Value-range and block-flag invariants over commits between two random
// functions.
TEST(FeaturePropertyTest, RangesAndBlockFlags) {
  Rng rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const std::string pre = testing::RandomFunction(rng, 8, trial % 2 == 0);
    const std::string post = testing::RandomFunction(rng, 8, trial % 3 == 0);
    auto out = FeaturizeCommit(OneFileCommit(pre, post));
    ASSERT_TRUE(out.warnings.empty()) << out.warnings[0].message;
    for (const FeaturizedLine& l : out.lines) {
      const FeatureVector& v = l.features;
      for (int i = 0; i < kNumFeatures; ++i) {
        EXPECT_GE(v[static_cast<size_t>(i)], 0);
        if (FeatureSchema()[static_cast<size_t>(i)].type == FeatureType::kFlag) {
          EXPECT_LE(v[static_cast<size_t>(i)], 1) << FeatureName(i);
        }
      }
      for (int flag : kBlockFlags) {
        if (v[static_cast<size_t>(flag)] == 1) EXPECT_EQ(v[kControlBlock], 1);
      }
    }
  }
}

// Deleted lines never consult the post snapshot and added lines never
// consult the pre snapshot for their own statements. The repetition counts
// are excluded: they inspect the other commit lines, each through its own
// snapshot.
TEST(FeaturePropertyTest, EachSideUsesOnlyItsOwnSnapshot) {
  Rng rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    CommitRecord record = OneFileCommit(testing::RandomFunction(rng, 8, false),
                                        testing::RandomFunction(rng, 8, false));
    SnapshotModels models = BuildSnapshotModels(record, nullptr);
    auto baseline = FeaturizeCommit(record, models);
    for (Side blank : {Side::kPre, Side::kPost}) {
      SnapshotModels swapped = models;
      swapped[{"f.c", blank}] = std::make_shared<minic::SourceUnit>(
          minic::BuildSourceUnit("int unrelated;\n"));
      auto out = FeaturizeCommit(record, swapped);
      ASSERT_EQ(out.lines.size(), baseline.lines.size());
      for (size_t i = 0; i < out.lines.size(); ++i) {
        if (out.lines[i].line.side == blank) continue;
        FeatureVector got = out.lines[i].features;
        FeatureVector want = baseline.lines[i].features;
        for (int f : {kRepeated, kRepeatedCall, kRepeatedControl}) {
          got[static_cast<size_t>(f)] = want[static_cast<size_t>(f)] = 0;
        }
        EXPECT_EQ(got, want);
      }
    }
  }
}

TEST(FeaturePropertyTest, Deterministic) {
  Rng rng(3);
  CommitRecord record = OneFileCommit(testing::RandomFunction(rng, 10, true),
                                      testing::RandomFunction(rng, 10, true));
  auto a = FeaturizeCommit(record);
  auto b = FeaturizeCommit(record);
  ASSERT_EQ(a.lines.size(), b.lines.size());
  for (size_t i = 0; i < a.lines.size(); ++i) {
    EXPECT_EQ(a.lines[i].features, b.lines[i].features);
  }
}

}  // namespace
}  // namespace linelabel
