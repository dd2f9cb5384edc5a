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


#include "linelabel/synth.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <set>
#include <string>

#include "linelabel/features.h"
#include "linelabel/jsonl.h"

namespace linelabel::synth {
namespace {

const std::set<std::string> kFixTemplateNames = {
    "guard",      "guard_return", "clamp",      "error_return",
    "loop_break", "switch_guard", "flag_guard", "flag_check"};

TEST(SynthTest, SameSeedSameCorpus) {
  auto a = GenerateCorpus(5, 20);
  auto b = GenerateCorpus(5, 20);
  ASSERT_EQ(a.size(), 20u);
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].record, b[i].record);
    EXPECT_EQ(a[i].labels, b[i].labels);
  }
  EXPECT_NE(GenerateCorpus(6, 1)[0].record, a[0].record);
}

TEST(SynthTest, EveryCommitLineIsLabeledAndParses) {
  for (const SynthCommit& c : GenerateCorpus(9, 40)) {
    std::set<std::string> ids;
    for (const CommitLine& line : EnumerateCommitLines(c.record)) ids.insert(line.id());
    std::set<std::string> labeled;
    for (const auto& [id, label] : c.labels) labeled.insert(id);
    EXPECT_EQ(ids, labeled) << c.record.commit_id;
    for (const FilePair& f : c.record.files) VerifyFilePair(f);
    EXPECT_TRUE(FeaturizeCommit(c.record).warnings.empty()) << c.record.commit_id;
  }
}

TEST(SynthTest, OnlyFixTemplatesProduceRelevantLines) {
  int positives = 0;
  for (const SynthCommit& c : GenerateCorpus(13, 60)) {
    for (const auto& [id, label] : c.labels) {
      if (label == 1) {
        ++positives;
        EXPECT_TRUE(kFixTemplateNames.count(c.origin.at(id))) << id << " " << c.origin.at(id);
      }
      if (c.category == Category::kRefactor || c.category == Category::kFormat) {
        EXPECT_EQ(label, 0) << id;
      }
    }
  }
  EXPECT_GT(positives, 0);
}

TEST(SynthTest, FormatCommitsOnlyReformat) {
  SynthCommit c = GenerateCommit(31, "fmt0001", Category::kFormat);
  ASSERT_FALSE(c.templates.empty());
  EXPECT_EQ(c.templates[0], "format");
  for (const auto& [id, label] : c.labels) EXPECT_EQ(label, 0);
}

TEST(SynthTest, WriteCorpusIsLoadable) {
  const auto dir = std::filesystem::temp_directory_path() / "linelabel_synth_test";
  std::filesystem::remove_all(dir);
  auto corpus = GenerateCorpus(2, 8);
  WriteCorpus(corpus, dir);
  auto loaded = LoadCommitCorpus(dir / "commits");
  ASSERT_EQ(loaded.size(), corpus.size());
  for (size_t i = 0; i < loaded.size(); ++i) EXPECT_EQ(loaded[i], corpus[i].record);
}

}  // namespace
}  // namespace linelabel::synth
