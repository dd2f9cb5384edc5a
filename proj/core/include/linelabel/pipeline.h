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

#ifndef LINELABEL_PIPELINE_H_
#define LINELABEL_PIPELINE_H_

// File-level glue between the stages: corpus featurization, feature and
// label files, and evaluation of an export against ground truth.

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "linelabel/active_learning.h"
#include "linelabel/commit.h"
#include "linelabel/features.h"
#include "linelabel/labeling.h"

namespace linelabel {

struct CorpusFeatures {
  std::vector<FeaturizedLine> lines;  // commit order, then line order
  std::vector<FeatureWarning> warnings;
};

// Featurizes every commit; `jobs` > 1 spreads commits over threads
// without changing the output.
CorpusFeatures FeaturizeCorpus(const std::vector<CommitRecord>& commits, int jobs = 1);

std::vector<Json> FeatureRecords(const CorpusFeatures& features);
std::vector<Json> LineRecords(const CorpusFeatures& features);

// Rows from a feature file. A `label` field, when present, becomes the
// row's reference label.
std::vector<al::SessionRow> ReadFeatureRows(const std::filesystem::path& path);

// {"id", "label"} records.
std::map<std::string, int> ReadLabels(const std::filesystem::path& path);
std::vector<Json> LabelsToJson(const std::map<std::string, int>& labels);

// Sets reference labels; throws IntegrityError for ids with no row.
void AttachLabels(std::vector<al::SessionRow>& rows, const std::map<std::string, int>& labels);

// Metrics of the export over the ids in `truth`. Throws IntegrityError
// if a truth id is missing from the export.
ml::Metrics EvaluateExport(const LabeledExport& records, const std::map<std::string, int>& truth);

}  // namespace linelabel

#endif  // LINELABEL_PIPELINE_H_
