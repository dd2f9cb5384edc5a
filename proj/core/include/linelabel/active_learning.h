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

#ifndef LINELABEL_ACTIVE_LEARNING_H_
#define LINELABEL_ACTIVE_LEARNING_H_

// Pool-based query-by-committee. A Session owns the labeled rows, the
// unlabeled pool, a fixed held-out split and the committee trained on
// the labeled rows. Sessions created with a directory persist every
// state change to an append-only event log and can be reopened.

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "linelabel/jsonl.h"
#include "linelabel/learners.h"

namespace linelabel::al {

// Entropy (base 2) of the distribution of `votes`. Throws ContractError
// on an empty list.
double VoteEntropy(std::span<const int> votes);

class Committee {
 public:
  Committee() = default;
  Committee(Committee&&) = default;
  Committee& operator=(Committee&&) = default;

  // Trains one member per kind; member i is seeded with MixSeed(seed, i).
  static Committee Train(const std::vector<std::string>& kinds, const ml::Dataset& data,
                         const ml::LearnerConfig& config, uint64_t seed);

  size_t size() const { return members_.size(); }
  const ml::Classifier& member(size_t i) const { return *members_[i]; }
  void Add(std::unique_ptr<ml::Classifier> member) { members_.push_back(std::move(member)); }

  std::vector<int> Votes(std::span<const double> x) const;
  // Mean member score; label = mean >= 0.5.
  ml::Prediction Predict(std::span<const double> x) const;
  ml::Metrics Evaluate(const ml::Dataset& data) const;

  // {"members": [model, ...]}
  Json ToJson() const;
  static Committee FromJson(const Json& json);

 private:
  std::vector<std::unique_ptr<ml::Classifier>> members_;
};

// Reads a committee file, or a single saved model as a one-member
// committee.
Committee LoadCommittee(const std::filesystem::path& path);

enum class Strategy { kCommittee, kRandom };

struct SessionConfig {
  double base_fraction = 0.2;     // of the non-held-out rows
  double holdout_fraction = 0.4;  // of all rows, split by commit
  int batch_size = 10;
  int max_iterations = 200;
  uint64_t seed = 1;
  std::vector<std::string> committee = {"random_forest", "linear_svm"};
  Strategy strategy = Strategy::kCommittee;
  bool discard_skips = false;
  ml::LearnerConfig learners;

  Json ToJson() const;
  // Missing keys keep defaults; unknown keys are rejected.
  static SessionConfig FromJson(const Json& json);
};

struct SessionRow {
  std::string id;
  std::vector<double> x;
  // Known label: given by the user for base/held-out rows, or kept back
  // for a simulated annotator on pool rows.
  std::optional<int> reference;
};

enum class RowStatus { kBase, kPool, kReserved, kLabeled, kHoldout, kDiscarded };
std::string_view RowStatusName(RowStatus status);

struct QueryItem {
  std::string id;
  double entropy = 0.0;
  std::vector<int> votes;
};

struct QueryBatch {
  int iteration = 0;
  std::vector<QueryItem> items;
};

struct Answer {
  std::string id;
  std::optional<int> label;  // nullopt = skip
};

struct HistoryPoint {
  int iteration = 0;      // 1-based
  int labels_added = 0;   // cumulative answers with a label
  int labeled_total = 0;  // base + labeled rows
  ml::Metrics metrics;    // committee on the held-out rows

  Json ToJson() const;
  static HistoryPoint FromJson(const Json& json);
};

// Limits for one RunSession call, counted from where the call starts.
struct Budget {
  int max_iterations = -1;  // -1: no limit
  int max_labels = -1;
  std::optional<std::chrono::duration<double>> time_limit;
  // Stops once held-out F1 reaches this value.
  std::optional<double> target_f1;
};

using Oracle = std::function<std::vector<Answer>(const QueryBatch&)>;

// Selects the held-out rows: whole commits (line id prefix) drawn at
// random until `fraction` of the labeled rows is covered.
std::set<std::string> SplitHoldoutByCommit(const std::vector<SessionRow>& rows,
                                           double fraction, uint64_t seed);

class Session {
 public:
  // In-memory session. `holdout` overrides the configured split.
  static Session Create(std::vector<SessionRow> rows, const SessionConfig& config,
                        std::optional<std::set<std::string>> holdout = std::nullopt);
  // Persistent session; `dir` must not already contain a session.
  static Session Create(const std::filesystem::path& dir, std::vector<SessionRow> rows,
                        const SessionConfig& config,
                        std::optional<std::set<std::string>> holdout = std::nullopt);
  // Reopens a persisted session by replaying its event log.
  static Session Open(const std::filesystem::path& dir);
  static bool Exists(const std::filesystem::path& dir);

  Session(Session&&) = default;
  Session& operator=(Session&&) = default;

  const SessionConfig& config() const { return config_; }
  const std::vector<SessionRow>& rows() const { return rows_; }
  RowStatus status(size_t row) const { return status_[row]; }
  std::optional<size_t> RowIndex(const std::string& id) const;
  // Label held for a base/labeled/held-out row.
  std::optional<int> HumanLabel(size_t row) const;

  size_t CountStatus(RowStatus status) const;
  size_t labeled_count() const;  // base + labeled
  size_t pool_count() const;     // pool + reserved
  int iteration() const { return static_cast<int>(history_.size()); }
  int labels_added() const { return labels_added_; }
  const ml::Metrics& base_metrics() const { return base_metrics_; }
  const std::vector<HistoryPoint>& history() const { return history_; }
  const Committee& committee() const { return committee_; }
  const std::optional<QueryBatch>& pending() const { return pending_; }

  // Returns the pending batch if there is one; otherwise selects up to
  // `limit` (default batch_size) pool rows, reserves them and returns
  // them. An empty batch means the pool is exhausted.
  const QueryBatch& SelectBatch(std::optional<int> limit = std::nullopt);
  // Returns reserved rows to the pool.
  void ReleasePending();
  // Applies the answers to the pending batch, retrains the committee
  // from scratch and appends a history point. Every answer id must be
  // reserved (ConflictError otherwise); unanswered reserved rows return
  // to the pool.
  const HistoryPoint& IncorporateLabels(const std::vector<Answer>& answers);
  // Retrains on the current labeled rows without changing any state.
  void Retrain();

  ml::Dataset LabeledData() const;
  ml::Dataset HoldoutData() const;
  // (labels_added, F1) for every completed iteration.
  std::vector<std::pair<int, double>> LearningCurve() const;
  Json Summary() const;

 private:
  Session() = default;
  void Initialise(std::vector<SessionRow> rows, const SessionConfig& config,
                  const std::optional<std::set<std::string>>& holdout);
  std::vector<size_t> PoolRows() const;
  QueryItem MakeItem(size_t row) const;
  void ApplySelect(int iteration, const std::vector<std::string>& ids);
  void ApplyLabels(const std::vector<Answer>& answers);
  HistoryPoint MakeHistoryPoint();
  void Persist(const Json& event);
  void SaveCommittee() const;

  SessionConfig config_;
  std::vector<SessionRow> rows_;
  std::vector<RowStatus> status_;
  std::vector<std::optional<int>> label_;  // labels of base/labeled rows
  std::map<std::string, size_t> index_;
  Committee committee_;
  ml::Metrics base_metrics_;
  std::vector<HistoryPoint> history_;
  std::optional<QueryBatch> pending_;
  int labels_added_ = 0;
  std::optional<std::filesystem::path> dir_;
};

// Answers every query from the rows' reference labels.
Oracle ReferenceOracle(const Session& session);

// Loops select -> oracle -> incorporate until the budget, the
// configured iteration limit or the pool runs out, or a batch comes back
// with no labels while skips return to the pool.
void RunSession(Session& session, const Oracle& oracle, const Budget& budget);

// Uniform sample without replacement of up to `count` pool ids, seeded.
std::vector<std::string> RandomBaselineSelect(const Session& session, int count,
                                              uint64_t seed);

// Labels used when held-out F1 first reached `target`: 0 if the base
// committee already did, nullopt if never.
std::optional<int> LabelsToReach(const Session& session, double target);

}  // namespace linelabel::al

#endif  // LINELABEL_ACTIVE_LEARNING_H_
