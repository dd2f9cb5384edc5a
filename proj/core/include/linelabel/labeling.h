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

#ifndef LINELABEL_LABELING_H_
#define LINELABEL_LABELING_H_

// Annotation-facing layer over an active-learning session: query
// presentation in diff context, the labeled export, and the per-function
// correction report. LabelingService holds the request logic used by the
// HTTP front end so it can be tested without sockets.

#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "linelabel/active_learning.h"
#include "linelabel/commit.h"
#include "linelabel/features.h"
#include "linelabel/jsonl.h"

namespace linelabel {

// ---- function map ----

struct FunctionRef {
  std::string commit_id;
  std::string path;
  std::string function;  // "" for lines outside any function
};

// Keyed by line id.
using FunctionMap = std::map<std::string, FunctionRef>;

FunctionMap MakeFunctionMap(std::span<const FeaturizedLine> lines);
std::vector<Json> FunctionMapToJson(const FunctionMap& map);
FunctionMap FunctionMapFromJson(const std::vector<Json>& records);

// ---- labeled export ----

enum class Provenance { kHuman, kPredicted };
std::string_view ProvenanceName(Provenance provenance);

struct ExportRecord {
  std::string id;
  int label = 0;
  Provenance provenance = Provenance::kPredicted;

  Json ToJson() const;
  static ExportRecord FromJson(const Json& json);
};

// Records sorted by id, one per row.
using LabeledExport = std::vector<ExportRecord>;

// Human labels (base, labeled and held-out rows) win; every other row
// gets the committee prediction.
LabeledExport PredictAll(const al::Session& session);

// Same for a stand-alone committee over feature rows. `human` overrides
// predictions for the ids it contains.
LabeledExport PredictAll(const al::Committee& committee,
                         const std::vector<al::SessionRow>& rows,
                         const std::map<std::string, int>& human = {});

std::vector<Json> ExportToJson(const LabeledExport& records);
LabeledExport ExportFromJson(const std::vector<Json>& records);

// ---- correction report ----

struct FunctionCorrection {
  std::string commit_id;
  std::string path;
  std::string function;
  int total = 0;
  int irrelevant = 0;
  double fraction = 0.0;
  bool flagged = false;

  Json ToJson() const;
};

struct CorrectionReport {
  double threshold = 0.5;
  std::vector<FunctionCorrection> functions;  // sorted by commit, path, name

  Json ToJson() const;
};

// Groups export rows by enclosing function and flags the functions whose
// irrelevant fraction is strictly above `threshold`. Lines outside any
// function are not counted. Throws ContractError for ids missing from
// the map or a threshold outside [0, 1].
CorrectionReport ReportCorrections(const LabeledExport& records, const FunctionMap& map,
                                   double threshold = 0.5);

// ---- query presentation ----

struct PresentedLine {
  std::string tag;  // "context", "add", "del"
  std::string text;
  bool marked = false;
};

struct QueryPresentation {
  std::string query_id;  // the line id
  std::string commit_id;
  std::string path;
  LineKind kind = LineKind::kAdded;
  int line_no = 0;
  std::string text;
  std::string hunk_header;
  std::vector<PresentedLine> hunk;
  std::vector<std::pair<int, std::string>> context;  // (line_no, text), +-5 lines
  std::vector<int> votes;
  double entropy = 0.0;

  Json ToJson() const;
};

// Looks up the line in the commit corpus. Throws ContractError when the
// commit, file or line is unknown.
QueryPresentation PresentLine(const CommitRecord& record, const std::string& line_id,
                              int context_lines = 5);

// ---- service ----

struct ServiceOptions {
  std::optional<std::filesystem::path> commits_dir;
  std::optional<std::filesystem::path> function_map;
};

// Request handlers of the labeling service. Mutating calls take an
// exclusive lock, reads a shared one.
class LabelingService {
 public:
  LabelingService(al::Session session, const ServiceOptions& options = {});

  Json SessionInfo() const;
  Json Queries();
  // Body: {"answers": [{"id": ..., "label": 0|1|null}, ...]}. Throws
  // ConflictError for ids outside the pending batch.
  Json SubmitLabels(const Json& body);
  Json Retrain();
  Json Curve() const;
  Json Export() const;
  Json Report(double threshold) const;

 private:
  QueryPresentation Present(const al::QueryItem& item) const;

  mutable std::shared_mutex mutex_;
  al::Session session_;
  std::map<std::string, CommitRecord> commits_;
  std::optional<FunctionMap> function_map_;
};

}  // namespace linelabel

#endif  // LINELABEL_LABELING_H_
