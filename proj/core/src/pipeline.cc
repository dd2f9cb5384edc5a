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

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "linelabel/errors.h"

namespace linelabel {

CorpusFeatures FeaturizeCorpus(const std::vector<CommitRecord>& commits, int jobs) {
  std::vector<CommitFeatures> per_commit(commits.size());
  const size_t workers = std::clamp<size_t>(static_cast<size_t>(std::max(jobs, 1)), 1,
                                            std::max<size_t>(commits.size(), 1));
  if (workers == 1) {
    for (size_t i = 0; i < commits.size(); ++i) per_commit[i] = FeaturizeCommit(commits[i]);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (size_t i; (i = next++) < commits.size();) {
            per_commit[i] = FeaturizeCommit(commits[i]);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (std::thread& t : pool) t.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  CorpusFeatures out;
  for (CommitFeatures& c : per_commit) {
    std::move(c.lines.begin(), c.lines.end(), std::back_inserter(out.lines));
    std::move(c.warnings.begin(), c.warnings.end(), std::back_inserter(out.warnings));
  }
  return out;
}

std::vector<Json> FeatureRecords(const CorpusFeatures& features) {
  std::vector<Json> out;
  out.reserve(features.lines.size());
  for (const FeaturizedLine& l : features.lines) {
    out.push_back(FeatureRecordToJson(l.line.id(), l.features));
  }
  return out;
}

std::vector<Json> LineRecords(const CorpusFeatures& features) {
  std::vector<Json> out;
  out.reserve(features.lines.size());
  for (const FeaturizedLine& l : features.lines) out.push_back(CommitLineToJson(l.line));
  return out;
}

std::vector<al::SessionRow> ReadFeatureRows(const std::filesystem::path& path) {
  std::vector<al::SessionRow> rows;
  for (const Json& j : ReadJsonLines(path)) {
    al::SessionRow row;
    try {
      row.id = j.at("id").get<std::string>();
      if (j.contains("label") && !j.at("label").is_null()) row.reference = j.at("label").get<int>();
    } catch (const Json::exception& e) {
      throw IntegrityError(path.string(), e.what());
    }
    const FeatureVector v = FeatureVectorFromJson(j);
    row.x.assign(v.begin(), v.end());
    rows.push_back(std::move(row));
  }
  return rows;
}

std::map<std::string, int> ReadLabels(const std::filesystem::path& path) {
  std::map<std::string, int> labels;
  for (const Json& j : ReadJsonLines(path)) {
    std::string id;
    int label = 0;
    try {
      id = j.at("id").get<std::string>();
      label = j.at("label").get<int>();
    } catch (const Json::exception& e) {
      throw IntegrityError(path.string(), e.what());
    }
    if (label != 0 && label != 1) {
      throw IntegrityError(path.string(), "label must be 0 or 1 for " + id);
    }
    if (!labels.emplace(id, label).second) {
      throw IntegrityError(path.string(), "duplicate label for " + id);
    }
  }
  return labels;
}

std::vector<Json> LabelsToJson(const std::map<std::string, int>& labels) {
  std::vector<Json> out;
  for (const auto& [id, label] : labels) {
    Json j;
    j["id"] = id;
    j["label"] = label;
    out.push_back(std::move(j));
  }
  return out;
}

void AttachLabels(std::vector<al::SessionRow>& rows, const std::map<std::string, int>& labels) {
  std::map<std::string, al::SessionRow*> by_id;
  for (al::SessionRow& r : rows) by_id[r.id] = &r;
  for (const auto& [id, label] : labels) {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw IntegrityError("labels", "no feature row for " + id);
    it->second->reference = label;
  }
}

ml::Metrics EvaluateExport(const LabeledExport& records,
                           const std::map<std::string, int>& truth) {
  std::map<std::string, int> predicted;
  for (const ExportRecord& r : records) predicted[r.id] = r.label;
  std::vector<int> t;
  std::vector<int> p;
  for (const auto& [id, label] : truth) {
    auto it = predicted.find(id);
    if (it == predicted.end()) throw IntegrityError("export", "no prediction for " + id);
    t.push_back(label);
    p.push_back(it->second);
  }
  return ml::ComputeMetrics(t, p);
}

}  // namespace linelabel
