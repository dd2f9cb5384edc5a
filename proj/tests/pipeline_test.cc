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


#include "linelabel/pipeline.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "linelabel/errors.h"
#include "linelabel/synth.h"

namespace linelabel {
namespace {

namespace fs = std::filesystem;

fs::path TempFile(const std::string& name, const std::string& contents) {
  fs::path path = fs::temp_directory_path() / ("linelabel_pipeline_test_" + name);
  std::ofstream(path) << contents;
  return path;
}

std::vector<CommitRecord> Records(uint64_t seed, int count) {
  std::vector<CommitRecord> out;
  for (auto& c : synth::GenerateCorpus(seed, count)) out.push_back(std::move(c.record));
  return out;
}

TEST(FeaturizeCorpusTest, ParallelMatchesSerial) {
  auto commits = Records(4, 12);
  auto serial = FeaturizeCorpus(commits, 1);
  auto parallel = FeaturizeCorpus(commits, 3);
  EXPECT_EQ(FormatJsonLines(FeatureRecords(serial)), FormatJsonLines(FeatureRecords(parallel)));
  EXPECT_EQ(FormatJsonLines(LineRecords(serial)), FormatJsonLines(LineRecords(parallel)));
}

TEST(FeatureRowsTest, RoundTripThroughJsonLines) {
  auto features = FeaturizeCorpus(Records(4, 3));
  const fs::path path = TempFile("rows.jsonl", FormatJsonLines(FeatureRecords(features)));
  auto rows = ReadFeatureRows(path);
  ASSERT_EQ(rows.size(), features.lines.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].id, features.lines[i].line.id());
    EXPECT_FALSE(rows[i].reference.has_value());
    for (int f = 0; f < kNumFeatures; ++f) {
      EXPECT_EQ(rows[i].x[static_cast<size_t>(f)],
                features.lines[i].features[static_cast<size_t>(f)]);
    }
  }
}

TEST(ReadLabelsTest, RejectsDuplicatesAndNonBinary) {
  auto ok = ReadLabels(TempFile("ok.jsonl", "{\"id\":\"a\",\"label\":1}\n{\"id\":\"b\",\"label\":0}\n"));
  EXPECT_EQ(ok.size(), 2u);
  EXPECT_EQ(ok.at("a"), 1);
  EXPECT_THROW(ReadLabels(TempFile("dup.jsonl",
                                   "{\"id\":\"a\",\"label\":1}\n{\"id\":\"a\",\"label\":0}\n")),
               IntegrityError);
  EXPECT_THROW(ReadLabels(TempFile("bad.jsonl", "{\"id\":\"a\",\"label\":3}\n")),
               IntegrityError);
  EXPECT_THROW(ReadLabels(TempFile("missing.jsonl", "{\"id\":\"a\"}\n")), IntegrityError);
}

TEST(AttachLabelsTest, UnknownIdIsIntegrityError) {
  std::vector<al::SessionRow> rows(2);
  rows[0].id = "a";
  rows[1].id = "b";
  AttachLabels(rows, {{"b", 1}});
  EXPECT_FALSE(rows[0].reference.has_value());
  EXPECT_EQ(rows[1].reference, 1);
  EXPECT_THROW(AttachLabels(rows, {{"c", 0}}), IntegrityError);
}

TEST(EvaluateExportTest, ScoresAgainstTruth) {
  LabeledExport records = {{"a", 1, Provenance::kHuman},
                           {"b", 1, Provenance::kPredicted},
                           {"c", 0, Provenance::kPredicted}};
  auto m = EvaluateExport(records, {{"a", 1}, {"b", 0}, {"c", 1}});
  EXPECT_EQ(m.tp, 1);
  EXPECT_EQ(m.fp, 1);
  EXPECT_EQ(m.fn, 1);
  EXPECT_THROW(EvaluateExport(records, {{"z", 1}}), IntegrityError);
}

}  // namespace
}  // namespace linelabel
