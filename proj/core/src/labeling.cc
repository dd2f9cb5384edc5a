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

#include "linelabel/labeling.h"

#include <algorithm>
#include <mutex>
#include <tuple>

#include "linelabel/errors.h"

namespace linelabel {

// ---- function map ----

FunctionMap MakeFunctionMap(std::span<const FeaturizedLine> lines) {
  FunctionMap map;
  for (const FeaturizedLine& l : lines) {
    map[l.line.id()] = {l.line.commit_id, l.line.path, l.function};
  }
  return map;
}

std::vector<Json> FunctionMapToJson(const FunctionMap& map) {
  std::vector<Json> out;
  out.reserve(map.size());
  for (const auto& [id, ref] : map) {
    Json j;
    j["id"] = id;
    j["commit_id"] = ref.commit_id;
    j["path"] = ref.path;
    j["function"] = ref.function;
    out.push_back(std::move(j));
  }
  return out;
}

FunctionMap FunctionMapFromJson(const std::vector<Json>& records) {
  FunctionMap map;
  for (const Json& j : records) {
    try {
      map[j.at("id").get<std::string>()] = {j.at("commit_id").get<std::string>(),
                                            j.at("path").get<std::string>(),
                                            j.at("function").get<std::string>()};
    } catch (const Json::exception& e) {
      throw IntegrityError("function map", e.what());
    }
  }
  return map;
}

// ---- labeled export ----

std::string_view ProvenanceName(Provenance provenance) {
  return provenance == Provenance::kHuman ? "human" : "predicted";
}

Json ExportRecord::ToJson() const {
  Json j;
  j["id"] = id;
  j["label"] = label;
  j["provenance"] = std::string(ProvenanceName(provenance));
  return j;
}

ExportRecord ExportRecord::FromJson(const Json& json) {
  ExportRecord r;
  try {
    r.id = json.at("id").get<std::string>();
    r.label = json.at("label").get<int>();
    const std::string p = json.value("provenance", "predicted");
    if (p != "human" && p != "predicted") {
      throw IntegrityError("export", "unknown provenance '" + p + "' for " + r.id);
    }
    r.provenance = p == "human" ? Provenance::kHuman : Provenance::kPredicted;
  } catch (const Json::exception& e) {
    throw IntegrityError("export", e.what());
  }
  if (r.label != 0 && r.label != 1) {
    throw IntegrityError("export", "label must be 0 or 1 for " + r.id);
  }
  return r;
}

namespace {

void SortById(LabeledExport& records) {
  std::sort(records.begin(), records.end(),
            [](const ExportRecord& a, const ExportRecord& b) { return a.id < b.id; });
}

}  // namespace

LabeledExport PredictAll(const al::Session& session) {
  LabeledExport out;
  out.reserve(session.rows().size());
  for (size_t r = 0; r < session.rows().size(); ++r) {
    const al::SessionRow& row = session.rows()[r];
    if (auto human = session.HumanLabel(r)) {
      out.push_back({row.id, *human, Provenance::kHuman});
    } else {
      out.push_back({row.id, session.committee().Predict(row.x).label, Provenance::kPredicted});
    }
  }
  SortById(out);
  return out;
}

LabeledExport PredictAll(const al::Committee& committee, const std::vector<al::SessionRow>& rows,
                         const std::map<std::string, int>& human) {
  LabeledExport out;
  out.reserve(rows.size());
  for (const al::SessionRow& row : rows) {
    auto it = human.find(row.id);
    if (it != human.end()) {
      out.push_back({row.id, it->second, Provenance::kHuman});
    } else {
      out.push_back({row.id, committee.Predict(row.x).label, Provenance::kPredicted});
    }
  }
  SortById(out);
  for (size_t i = 1; i < out.size(); ++i) {
    if (out[i].id == out[i - 1].id) throw ContractError("duplicate line id " + out[i].id);
  }
  return out;
}

std::vector<Json> ExportToJson(const LabeledExport& records) {
  std::vector<Json> out;
  out.reserve(records.size());
  for (const ExportRecord& r : records) out.push_back(r.ToJson());
  return out;
}

LabeledExport ExportFromJson(const std::vector<Json>& records) {
  LabeledExport out;
  out.reserve(records.size());
  for (const Json& j : records) out.push_back(ExportRecord::FromJson(j));
  return out;
}

// ---- correction report ----

Json FunctionCorrection::ToJson() const {
  Json j;
  j["commit_id"] = commit_id;
  j["path"] = path;
  j["function"] = function;
  j["total"] = total;
  j["irrelevant"] = irrelevant;
  j["fraction"] = fraction;
  j["flagged"] = flagged;
  return j;
}

Json CorrectionReport::ToJson() const {
  Json j;
  j["threshold"] = threshold;
  j["flagged"] = std::count_if(functions.begin(), functions.end(),
                               [](const FunctionCorrection& f) { return f.flagged; });
  j["functions"] = Json::array();
  for (const FunctionCorrection& f : functions) j["functions"].push_back(f.ToJson());
  return j;
}

CorrectionReport ReportCorrections(const LabeledExport& records, const FunctionMap& map,
                                   double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw ContractError("threshold must lie in [0, 1]");
  }
  std::map<std::tuple<std::string, std::string, std::string>, std::pair<int, int>> groups;
  for (const ExportRecord& r : records) {
    auto it = map.find(r.id);
    if (it == map.end()) throw ContractError("line " + r.id + " is not in the function map");
    const FunctionRef& ref = it->second;
    if (ref.function.empty()) continue;
    auto& [total, irrelevant] = groups[{ref.commit_id, ref.path, ref.function}];
    ++total;
    if (r.label == 0) ++irrelevant;
  }
  CorrectionReport report;
  report.threshold = threshold;
  for (const auto& [key, counts] : groups) {
    FunctionCorrection f;
    std::tie(f.commit_id, f.path, f.function) = key;
    f.total = counts.first;
    f.irrelevant = counts.second;
    f.fraction = static_cast<double>(f.irrelevant) / f.total;
    f.flagged = f.fraction > threshold;
    report.functions.push_back(std::move(f));
  }
  return report;
}

// ---- query presentation ----

Json QueryPresentation::ToJson() const {
  Json j;
  j["query_id"] = query_id;
  j["commit_id"] = commit_id;
  j["path"] = path;
  j["kind"] = std::string(KindName(kind));
  j["line_no"] = line_no;
  j["text"] = text;
  j["hunk_header"] = hunk_header;
  j["hunk"] = Json::array();
  for (const PresentedLine& l : hunk) {
    Json h;
    h["tag"] = l.tag;
    h["text"] = l.text;
    h["marked"] = l.marked;
    j["hunk"].push_back(std::move(h));
  }
  j["context"] = Json::array();
  for (const auto& [no, t] : context) {
    Json c;
    c["line_no"] = no;
    c["text"] = t;
    j["context"].push_back(std::move(c));
  }
  j["votes"] = votes;
  j["entropy"] = entropy;
  return j;
}

QueryPresentation PresentLine(const CommitRecord& record, const std::string& line_id,
                              int context_lines) {
  auto parts = ParseLineId(line_id);
  if (!parts || parts->commit_id != record.commit_id) {
    throw ContractError("line " + line_id + " does not belong to commit " + record.commit_id);
  }
  auto file = std::find_if(record.files.begin(), record.files.end(),
                           [&](const FilePair& f) { return f.path == parts->path; });
  if (file == record.files.end()) throw ContractError("unknown file in line id " + line_id);

  QueryPresentation q;
  q.query_id = line_id;
  q.commit_id = record.commit_id;
  q.path = parts->path;
  q.kind = parts->side == Side::kPre ? LineKind::kDeleted : LineKind::kAdded;
  q.line_no = parts->line_no;

  bool found = false;
  for (const diff::Hunk& h : file->hunks) {
    int pre = h.pre_len == 0 ? h.pre_start + 1 : h.pre_start;
    int post = h.post_len == 0 ? h.post_start + 1 : h.post_start;
    std::vector<PresentedLine> lines;
    bool here = false;
    for (const diff::HunkLine& l : h.lines) {
      PresentedLine p;
      p.text = l.text;
      switch (l.tag) {
        case diff::LineTag::kContext:
          p.tag = "context";
          ++pre;
          ++post;
          break;
        case diff::LineTag::kDel:
          p.tag = "del";
          p.marked = parts->side == Side::kPre && pre == parts->line_no;
          ++pre;
          break;
        case diff::LineTag::kAdd:
          p.tag = "add";
          p.marked = parts->side == Side::kPost && post == parts->line_no;
          ++post;
          break;
      }
      if (p.marked) {
        here = true;
        q.text = p.text;
      }
      lines.push_back(std::move(p));
    }
    if (here) {
      q.hunk = std::move(lines);
      q.hunk_header = "@@ -" + std::to_string(h.pre_start) + "," + std::to_string(h.pre_len) +
                      " +" + std::to_string(h.post_start) + "," + std::to_string(h.post_len) +
                      " @@";
      found = true;
      break;
    }
  }
  if (!found) throw ContractError("line " + line_id + " is not a changed line");

  const auto& snapshot = parts->side == Side::kPre ? file->pre_text : file->post_text;
  if (snapshot) {
    const diff::Lines text = diff::SplitLines(*snapshot);
    const int n = static_cast<int>(text.lines.size());
    for (int i = std::max(1, q.line_no - context_lines);
         i <= std::min(n, q.line_no + context_lines); ++i) {
      q.context.emplace_back(i, text.lines[static_cast<size_t>(i - 1)]);
    }
  }
  return q;
}

// ---- service ----

LabelingService::LabelingService(al::Session session, const ServiceOptions& options)
    : session_(std::move(session)) {
  if (options.commits_dir) {
    for (CommitRecord& r : LoadCommitCorpus(*options.commits_dir)) {
      std::string id = r.commit_id;
      commits_.emplace(std::move(id), std::move(r));
    }
  }
  if (options.function_map) {
    function_map_ = FunctionMapFromJson(ReadJsonLines(*options.function_map));
  }
}

QueryPresentation LabelingService::Present(const al::QueryItem& item) const {
  QueryPresentation q;
  auto parts = ParseLineId(item.id);
  auto commit = parts ? commits_.find(parts->commit_id) : commits_.end();
  if (commit != commits_.end()) {
    q = PresentLine(commit->second, item.id);
  } else {
    // Without the corpus only the id fields are known.
    q.query_id = item.id;
    if (parts) {
      q.commit_id = parts->commit_id;
      q.path = parts->path;
      q.kind = parts->side == Side::kPre ? LineKind::kDeleted : LineKind::kAdded;
      q.line_no = parts->line_no;
    }
  }
  q.votes = item.votes;
  q.entropy = item.entropy;
  return q;
}

Json LabelingService::SessionInfo() const {
  std::shared_lock lock(mutex_);
  Json j = session_.Summary();
  j["pending"] = session_.pending() ? session_.pending()->items.size() : 0;
  j["has_commits"] = !commits_.empty();
  j["has_function_map"] = function_map_.has_value();
  return j;
}

Json LabelingService::Queries() {
  std::unique_lock lock(mutex_);
  const al::QueryBatch& batch = session_.SelectBatch();
  Json j;
  j["iteration"] = batch.iteration;
  j["queries"] = Json::array();
  for (const al::QueryItem& item : batch.items) j["queries"].push_back(Present(item).ToJson());
  return j;
}

Json LabelingService::SubmitLabels(const Json& body) {
  std::vector<al::Answer> answers;
  try {
    for (const Json& a : body.at("answers")) {
      al::Answer answer;
      answer.id = a.at("id").get<std::string>();
      if (a.contains("label") && !a.at("label").is_null()) {
        const int label = a.at("label").get<int>();
        if (label != 0 && label != 1) {
          throw ContractError("label must be 0, 1 or null for " + answer.id);
        }
        answer.label = label;
      }
      answers.push_back(std::move(answer));
    }
  } catch (const Json::exception& e) {
    throw ContractError(std::string("malformed labels body: ") + e.what());
  }
  std::unique_lock lock(mutex_);
  const al::HistoryPoint& point = session_.IncorporateLabels(answers);
  Json j;
  j["accepted"] = answers.size();
  j["point"] = point.ToJson();
  j["metrics"] = point.metrics.ToJson();
  return j;
}

Json LabelingService::Retrain() {
  std::unique_lock lock(mutex_);
  session_.Retrain();
  Json j;
  j["metrics"] = session_.committee().Evaluate(session_.HoldoutData()).ToJson();
  j["labeled"] = session_.labeled_count();
  return j;
}

Json LabelingService::Curve() const {
  std::shared_lock lock(mutex_);
  Json j;
  j["base"] = session_.base_metrics().ToJson();
  j["points"] = Json::array();
  for (const al::HistoryPoint& p : session_.history()) j["points"].push_back(p.ToJson());
  return j;
}

Json LabelingService::Export() const {
  std::shared_lock lock(mutex_);
  Json j;
  j["records"] = ExportToJson(PredictAll(session_));
  return j;
}

Json LabelingService::Report(double threshold) const {
  std::shared_lock lock(mutex_);
  if (!function_map_) throw ContractError("the service was started without a function map");
  return ReportCorrections(PredictAll(session_), *function_map_, threshold).ToJson();
}

}  // namespace linelabel
