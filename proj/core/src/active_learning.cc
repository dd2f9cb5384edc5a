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

#include "linelabel/active_learning.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "linelabel/commit.h"
#include "linelabel/errors.h"
#include "linelabel/random.h"

namespace linelabel::al {

namespace fs = std::filesystem;

namespace {

constexpr int kSessionFormatVersion = 1;

// Seed streams derived from the session seed.
enum SeedStream : uint64_t {
  kHoldoutStream = 1,
  kBaseStream = 2,
  kCommitteeStream = 3,
  kRandomStream = 4,
};

std::string_view StrategyName(Strategy s) {
  return s == Strategy::kCommittee ? "committee" : "random";
}

RowStatus ParseRowStatus(const std::string& name) {
  if (name == "base") return RowStatus::kBase;
  if (name == "pool") return RowStatus::kPool;
  if (name == "holdout") return RowStatus::kHoldout;
  throw IntegrityError("rows.jsonl", "unknown row status '" + name + "'");
}

std::string CommitOf(const std::string& id) {
  auto parts = ParseLineId(id);
  return parts ? parts->commit_id : id;
}

Json AnswerToJson(const Answer& a) {
  Json j;
  j["id"] = a.id;
  j["label"] = a.label ? Json(*a.label) : Json(nullptr);
  return j;
}

}  // namespace

double VoteEntropy(std::span<const int> votes) {
  if (votes.empty()) throw ContractError("vote entropy of an empty vote list");
  std::map<int, int> counts;
  for (int v : votes) ++counts[v];
  const double c = static_cast<double>(votes.size());
  double h = 0.0;
  for (const auto& [label, n] : counts) {
    const double p = n / c;
    h -= p * std::log2(p);
  }
  return h;
}

Committee Committee::Train(const std::vector<std::string>& kinds, const ml::Dataset& data,
                           const ml::LearnerConfig& config, uint64_t seed) {
  if (kinds.size() < 2) throw ContractError("a committee needs at least two members");
  Committee c;
  for (size_t i = 0; i < kinds.size(); ++i) {
    c.members_.push_back(ml::TrainModel(kinds[i], data, config, MixSeed(seed, i)));
  }
  return c;
}

Json Committee::ToJson() const {
  Json j;
  j["members"] = Json::array();
  for (const auto& m : members_) j["members"].push_back(m->ToJson());
  return j;
}

Committee Committee::FromJson(const Json& json) {
  Committee c;
  for (const Json& m : json.at("members")) c.Add(ml::ModelFromJson(m));
  if (c.size() == 0) throw IntegrityError("committee", "no members");
  return c;
}

Committee LoadCommittee(const fs::path& path) {
  Json j;
  try {
    j = Json::parse(ReadFile(path));
  } catch (const Json::exception& e) {
    throw IntegrityError(path.string(), e.what());
  }
  try {
    if (j.contains("members")) return Committee::FromJson(j);
    Committee c;
    c.Add(ml::ModelFromJson(j));
    return c;
  } catch (const Json::exception& e) {
    throw IntegrityError(path.string(), e.what());
  }
}

std::vector<int> Committee::Votes(std::span<const double> x) const {
  std::vector<int> votes;
  votes.reserve(members_.size());
  for (const auto& m : members_) votes.push_back(m->Predict(x).label);
  return votes;
}

ml::Prediction Committee::Predict(std::span<const double> x) const {
  double sum = 0.0;
  for (const auto& m : members_) sum += m->Score(x);
  const double mean = sum / static_cast<double>(members_.size());
  return {ml::LabelForScore(mean), mean};
}

ml::Metrics Committee::Evaluate(const ml::Dataset& data) const {
  std::vector<int> predicted;
  predicted.reserve(data.rows());
  for (const auto& row : data.x) predicted.push_back(Predict(row).label);
  return ml::ComputeMetrics(data.y, predicted);
}

Json SessionConfig::ToJson() const {
  Json j;
  j["base_fraction"] = base_fraction;
  j["holdout_fraction"] = holdout_fraction;
  j["batch_size"] = batch_size;
  j["max_iterations"] = max_iterations;
  j["seed"] = seed;
  j["committee"] = committee;
  j["strategy"] = std::string(StrategyName(strategy));
  j["discard_skips"] = discard_skips;
  j["learners"] = learners.ToJson();
  return j;
}

SessionConfig SessionConfig::FromJson(const Json& json) {
  static const std::set<std::string> kKnown = {
      "base_fraction", "holdout_fraction", "batch_size", "max_iterations", "seed",
      "committee",     "strategy",         "discard_skips", "learners"};
  for (auto it = json.begin(); it != json.end(); ++it) {
    if (!kKnown.count(it.key())) {
      throw ContractError("unknown key '" + it.key() + "' in session config");
    }
  }
  SessionConfig c;
  c.base_fraction = json.value("base_fraction", c.base_fraction);
  c.holdout_fraction = json.value("holdout_fraction", c.holdout_fraction);
  c.batch_size = json.value("batch_size", c.batch_size);
  c.max_iterations = json.value("max_iterations", c.max_iterations);
  c.seed = json.value("seed", c.seed);
  c.committee = json.value("committee", c.committee);
  const std::string strategy = json.value("strategy", std::string("committee"));
  if (strategy == "committee") {
    c.strategy = Strategy::kCommittee;
  } else if (strategy == "random") {
    c.strategy = Strategy::kRandom;
  } else {
    throw ContractError("strategy must be 'committee' or 'random'");
  }
  c.discard_skips = json.value("discard_skips", c.discard_skips);
  if (json.contains("learners")) c.learners = ml::LearnerConfig::FromJson(json["learners"]);
  if (!(c.base_fraction > 0 && c.base_fraction <= 1) ||
      !(c.holdout_fraction >= 0 && c.holdout_fraction < 1) || c.batch_size < 1 ||
      c.max_iterations < 0) {
    throw ContractError(
        "session config: base_fraction in (0,1], holdout_fraction in [0,1), batch_size >= 1");
  }
  return c;
}

std::string_view RowStatusName(RowStatus status) {
  switch (status) {
    case RowStatus::kBase: return "base";
    case RowStatus::kPool: return "pool";
    case RowStatus::kReserved: return "reserved";
    case RowStatus::kLabeled: return "labeled";
    case RowStatus::kHoldout: return "holdout";
    case RowStatus::kDiscarded: return "discarded";
  }
  return "?";
}

Json HistoryPoint::ToJson() const {
  Json j;
  j["iteration"] = iteration;
  j["labels_added"] = labels_added;
  j["labeled_total"] = labeled_total;
  j["metrics"] = metrics.ToJson();
  return j;
}

HistoryPoint HistoryPoint::FromJson(const Json& json) {
  HistoryPoint p;
  p.iteration = json.at("iteration").get<int>();
  p.labels_added = json.at("labels_added").get<int>();
  p.labeled_total = json.at("labeled_total").get<int>();
  p.metrics = ml::Metrics::FromJson(json.at("metrics"));
  return p;
}

std::set<std::string> SplitHoldoutByCommit(const std::vector<SessionRow>& rows,
                                           double fraction, uint64_t seed) {
  std::map<std::string, std::vector<std::string>> groups;
  size_t labeled = 0;
  for (const SessionRow& r : rows) {
    if (!r.reference) continue;
    groups[CommitOf(r.id)].push_back(r.id);
    ++labeled;
  }
  std::vector<std::string> keys;
  for (const auto& [k, v] : groups) keys.push_back(k);
  Rng rng(seed);
  rng.Shuffle(keys);
  const double want = fraction * static_cast<double>(labeled);
  std::set<std::string> out;
  for (const std::string& k : keys) {
    if (static_cast<double>(out.size()) >= want) break;
    for (const std::string& id : groups[k]) out.insert(id);
  }
  return out;
}

Session Session::Create(std::vector<SessionRow> rows, const SessionConfig& config,
                        std::optional<std::set<std::string>> holdout) {
  Session s;
  s.Initialise(std::move(rows), config, holdout);
  return s;
}

bool Session::Exists(const fs::path& dir) { return fs::exists(dir / "session.json"); }

Session Session::Create(const fs::path& dir, std::vector<SessionRow> rows,
                        const SessionConfig& config,
                        std::optional<std::set<std::string>> holdout) {
  if (Exists(dir)) {
    throw ContractError("a session already exists in " + dir.string());
  }
  Session s = Create(std::move(rows), config, holdout);
  fs::create_directories(dir);
  std::vector<Json> records;
  records.reserve(s.rows_.size());
  for (size_t r = 0; r < s.rows_.size(); ++r) {
    Json j;
    j["id"] = s.rows_[r].id;
    j["status"] = std::string(RowStatusName(s.status_[r]));
    j["reference"] = s.rows_[r].reference ? Json(*s.rows_[r].reference) : Json(nullptr);
    j["x"] = s.rows_[r].x;
    records.push_back(std::move(j));
  }
  WriteJsonLines(dir / "rows.jsonl", records);
  WriteFileAtomic(dir / "events.jsonl", "");
  WriteFileAtomic(dir / "history.jsonl", "");
  Json meta;
  meta["format_version"] = kSessionFormatVersion;
  meta["config"] = s.config_.ToJson();
  meta["base_metrics"] = s.base_metrics_.ToJson();
  // Written last: its presence marks a complete session directory.
  WriteFileAtomic(dir / "session.json", meta.dump(1) + "\n");
  s.dir_ = dir;
  s.SaveCommittee();
  return s;
}

void Session::Initialise(std::vector<SessionRow> rows, const SessionConfig& config,
                         const std::optional<std::set<std::string>>& holdout) {
  config_ = config;
  rows_ = std::move(rows);
  status_.assign(rows_.size(), RowStatus::kPool);
  label_.assign(rows_.size(), std::nullopt);
  for (size_t r = 0; r < rows_.size(); ++r) {
    if (!index_.emplace(rows_[r].id, r).second) {
      throw ContractError("duplicate row id " + rows_[r].id);
    }
  }
  const std::set<std::string> held =
      holdout ? *holdout
              : SplitHoldoutByCommit(rows_, config.holdout_fraction,
                                     MixSeed(config.seed, kHoldoutStream));
  for (const std::string& id : held) {
    auto r = RowIndex(id);
    if (!r) throw ContractError("held-out id not in the data: " + id);
    if (!rows_[*r].reference) throw ContractError("held-out row has no label: " + id);
    status_[*r] = RowStatus::kHoldout;
  }

  // Base rows: a random base_fraction of the training rows, drawn from
  // those with a known label.
  std::vector<size_t> candidates;
  size_t training = 0;
  for (size_t r = 0; r < rows_.size(); ++r) {
    if (status_[r] == RowStatus::kHoldout) continue;
    ++training;
    if (rows_[r].reference) candidates.push_back(r);
  }
  std::sort(candidates.begin(), candidates.end(),
            [&](size_t a, size_t b) { return rows_[a].id < rows_[b].id; });
  const size_t want =
      static_cast<size_t>(std::llround(config.base_fraction * static_cast<double>(training)));
  if (candidates.size() > want) {
    Rng rng(MixSeed(config.seed, kBaseStream));
    rng.Shuffle(candidates);
    candidates.resize(want);
  }
  for (size_t r : candidates) {
    status_[r] = RowStatus::kBase;
    label_[r] = rows_[r].reference;
  }
  Retrain();
  base_metrics_ = committee_.Evaluate(HoldoutData());
}

std::optional<size_t> Session::RowIndex(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Session::HumanLabel(size_t row) const {
  switch (status_[row]) {
    case RowStatus::kBase:
    case RowStatus::kLabeled:
      return label_[row];
    case RowStatus::kHoldout:
      return rows_[row].reference;
    default:
      return std::nullopt;
  }
}

size_t Session::CountStatus(RowStatus status) const {
  return static_cast<size_t>(std::count(status_.begin(), status_.end(), status));
}

size_t Session::labeled_count() const {
  return CountStatus(RowStatus::kBase) + CountStatus(RowStatus::kLabeled);
}

size_t Session::pool_count() const {
  return CountStatus(RowStatus::kPool) + CountStatus(RowStatus::kReserved);
}

ml::Dataset Session::LabeledData() const {
  ml::Dataset d;
  for (size_t r = 0; r < rows_.size(); ++r) {
    if (status_[r] == RowStatus::kBase || status_[r] == RowStatus::kLabeled) {
      d.Add(rows_[r].x, *label_[r], rows_[r].id);
    }
  }
  return d;
}

ml::Dataset Session::HoldoutData() const {
  ml::Dataset d;
  for (size_t r = 0; r < rows_.size(); ++r) {
    if (status_[r] == RowStatus::kHoldout) d.Add(rows_[r].x, *rows_[r].reference, rows_[r].id);
  }
  return d;
}

void Session::Retrain() {
  committee_ = Committee::Train(config_.committee, LabeledData(), config_.learners,
                                MixSeed(config_.seed, kCommitteeStream));
}

std::vector<size_t> Session::PoolRows() const {
  std::vector<size_t> pool;
  for (size_t r = 0; r < rows_.size(); ++r) {
    if (status_[r] == RowStatus::kPool) pool.push_back(r);
  }
  std::sort(pool.begin(), pool.end(),
            [&](size_t a, size_t b) { return rows_[a].id < rows_[b].id; });
  return pool;
}

QueryItem Session::MakeItem(size_t row) const {
  QueryItem item;
  item.id = rows_[row].id;
  item.votes = committee_.Votes(rows_[row].x);
  item.entropy = VoteEntropy(item.votes);
  return item;
}

std::vector<std::string> RandomBaselineSelect(const Session& session, int count,
                                              uint64_t seed) {
  std::vector<std::string> ids;
  for (size_t r = 0; r < session.rows().size(); ++r) {
    if (session.status(r) == RowStatus::kPool) ids.push_back(session.rows()[r].id);
  }
  std::sort(ids.begin(), ids.end());
  Rng rng(seed);
  const size_t k = std::min(ids.size(), static_cast<size_t>(std::max(count, 0)));
  for (size_t i = 0; i < k; ++i) {
    std::swap(ids[i], ids[i + rng.Index(ids.size() - i)]);
  }
  ids.resize(k);
  return ids;
}

const QueryBatch& Session::SelectBatch(std::optional<int> limit) {
  if (pending_) return *pending_;
  const int next = iteration() + 1;
  const size_t k = static_cast<size_t>(std::max(limit.value_or(config_.batch_size), 0));
  std::vector<std::string> ids;
  if (config_.strategy == Strategy::kRandom) {
    ids = RandomBaselineSelect(*this, static_cast<int>(k),
                               MixSeed(config_.seed, kRandomStream, static_cast<uint64_t>(next)));
  } else {
    std::vector<QueryItem> items;
    for (size_t r : PoolRows()) items.push_back(MakeItem(r));
    // PoolRows is id-sorted, so a stable sort keeps ascending ids on ties.
    std::stable_sort(items.begin(), items.end(), [](const QueryItem& a, const QueryItem& b) {
      return a.entropy > b.entropy;
    });
    for (size_t i = 0; i < std::min(k, items.size()); ++i) ids.push_back(items[i].id);
  }
  if (ids.empty()) {
    static const QueryBatch kEmpty;
    return kEmpty;
  }
  Json event;
  event["event"] = "select";
  event["iteration"] = next;
  event["ids"] = ids;
  Persist(event);
  ApplySelect(next, ids);
  return *pending_;
}

void Session::ApplySelect(int iteration, const std::vector<std::string>& ids) {
  QueryBatch batch;
  batch.iteration = iteration;
  for (const std::string& id : ids) {
    auto r = RowIndex(id);
    if (!r || status_[*r] != RowStatus::kPool) {
      throw IntegrityError("events.jsonl", "selected row is not in the pool: " + id);
    }
    status_[*r] = RowStatus::kReserved;
    batch.items.push_back(MakeItem(*r));
  }
  pending_ = std::move(batch);
}

void Session::ReleasePending() {
  if (!pending_) return;
  Json event;
  event["event"] = "release";
  Persist(event);
  for (const QueryItem& item : pending_->items) status_[*RowIndex(item.id)] = RowStatus::kPool;
  pending_.reset();
}

const HistoryPoint& Session::IncorporateLabels(const std::vector<Answer>& answers) {
  std::set<std::string> seen;
  for (const Answer& a : answers) {
    auto r = RowIndex(a.id);
    if (!r) throw ConflictError(a.id, "unknown query id");
    if (status_[*r] != RowStatus::kReserved) throw ConflictError(a.id, "query is not pending");
    if (!seen.insert(a.id).second) throw ConflictError(a.id, "duplicate answer");
    if (a.label && *a.label != 0 && *a.label != 1) {
      throw ContractError("label for " + a.id + " must be 0, 1 or null");
    }
  }
  if (!pending_) throw ConflictError("", "no pending query batch");
  Json event;
  event["event"] = "labels";
  event["iteration"] = pending_->iteration;
  event["answers"] = Json::array();
  for (const Answer& a : answers) event["answers"].push_back(AnswerToJson(a));
  Persist(event);
  ApplyLabels(answers);
  Retrain();
  history_.push_back(MakeHistoryPoint());
  if (dir_) {
    AppendJsonLine(*dir_ / "history.jsonl", history_.back().ToJson());
    SaveCommittee();
  }
  return history_.back();
}

void Session::ApplyLabels(const std::vector<Answer>& answers) {
  for (const Answer& a : answers) {
    const size_t r = *RowIndex(a.id);
    if (a.label) {
      status_[r] = RowStatus::kLabeled;
      label_[r] = a.label;
      ++labels_added_;
    } else {
      status_[r] = config_.discard_skips ? RowStatus::kDiscarded : RowStatus::kPool;
    }
  }
  for (RowStatus& s : status_) {
    if (s == RowStatus::kReserved) s = RowStatus::kPool;
  }
  pending_.reset();
}

HistoryPoint Session::MakeHistoryPoint() {
  HistoryPoint p;
  p.iteration = iteration() + 1;
  p.labels_added = labels_added_;
  p.labeled_total = static_cast<int>(labeled_count());
  p.metrics = committee_.Evaluate(HoldoutData());
  return p;
}

void Session::Persist(const Json& event) {
  if (dir_) AppendJsonLine(*dir_ / "events.jsonl", event);
}

void Session::SaveCommittee() const {
  if (!dir_) return;
  Json state;
  state["iteration"] = iteration();
  state["members"] = committee_.ToJson().at("members");
  WriteFileAtomic(*dir_ / "committee.json", state.dump() + "\n");
}

Session Session::Open(const fs::path& dir) {
  if (!Exists(dir)) throw IntegrityError(dir.string(), "no session found");
  Session s;
  Json meta;
  try {
    meta = Json::parse(ReadFile(dir / "session.json"));
    if (meta.value("format_version", -1) != kSessionFormatVersion) {
      throw IntegrityError((dir / "session.json").string(), "unsupported session format");
    }
    s.config_ = SessionConfig::FromJson(meta.at("config"));
  } catch (const Json::exception& e) {
    throw IntegrityError((dir / "session.json").string(), e.what());
  }
  for (const Json& j : ReadJsonLines(dir / "rows.jsonl")) {
    SessionRow row;
    row.id = j.at("id").get<std::string>();
    row.x = j.at("x").get<std::vector<double>>();
    if (!j.at("reference").is_null()) row.reference = j["reference"].get<int>();
    const size_t r = s.rows_.size();
    s.status_.push_back(ParseRowStatus(j.at("status").get<std::string>()));
    s.label_.push_back(s.status_.back() == RowStatus::kBase ? row.reference : std::nullopt);
    s.index_.emplace(row.id, r);
    s.rows_.push_back(std::move(row));
  }
  s.base_metrics_ = ml::Metrics::FromJson(meta.at("base_metrics"));
  std::vector<HistoryPoint> saved;
  for (const Json& j : ReadJsonLines(dir / "history.jsonl")) {
    saved.push_back(HistoryPoint::FromJson(j));
  }

  // Replay. Selections only need the reserved ids; votes shown in the
  // pending batch are recomputed with the final committee below.
  s.Retrain();
  int labels_events = 0;
  bool committee_current = true;
  for (const Json& e : ReadJsonLines(dir / "events.jsonl")) {
    const std::string kind = e.at("event").get<std::string>();
    if (kind == "select") {
      s.ApplySelect(e.at("iteration").get<int>(), e.at("ids").get<std::vector<std::string>>());
    } else if (kind == "release") {
      for (RowStatus& st : s.status_) {
        if (st == RowStatus::kReserved) st = RowStatus::kPool;
      }
      s.pending_.reset();
    } else if (kind == "labels") {
      std::vector<Answer> answers;
      for (const Json& a : e.at("answers")) {
        Answer ans;
        ans.id = a.at("id").get<std::string>();
        if (!a.at("label").is_null()) ans.label = a["label"].get<int>();
        auto r = s.RowIndex(ans.id);
        if (!r || s.status_[*r] != RowStatus::kReserved) {
          throw IntegrityError("events.jsonl", "label for a row that was not pending: " + ans.id);
        }
        answers.push_back(std::move(ans));
      }
      s.ApplyLabels(answers);
      ++labels_events;
      if (labels_events <= static_cast<int>(saved.size())) {
        s.history_.push_back(saved[static_cast<size_t>(labels_events - 1)]);
        committee_current = false;
      } else {
        // Accepted labels whose retrain did not finish before a crash.
        s.Retrain();
        committee_current = true;
        s.history_.push_back(s.MakeHistoryPoint());
        AppendJsonLine(dir / "history.jsonl", s.history_.back().ToJson());
      }
    } else {
      throw IntegrityError("events.jsonl", "unknown event '" + kind + "'");
    }
  }
  s.dir_ = dir;
  if (!committee_current) {
    bool loaded = false;
    if (fs::exists(dir / "committee.json")) {
      Json state = Json::parse(ReadFile(dir / "committee.json"));
      if (state.value("iteration", -1) == s.iteration()) {
        s.committee_ = Committee::FromJson(state);
        loaded = true;
      }
    }
    if (!loaded) s.Retrain();
  }
  s.SaveCommittee();
  if (s.pending_) {
    for (QueryItem& item : s.pending_->items) item = s.MakeItem(*s.RowIndex(item.id));
  }
  s.labels_added_ = static_cast<int>(s.CountStatus(RowStatus::kLabeled));
  return s;
}

std::vector<std::pair<int, double>> Session::LearningCurve() const {
  std::vector<std::pair<int, double>> curve;
  for (const HistoryPoint& p : history_) curve.emplace_back(p.labels_added, p.metrics.f1);
  return curve;
}

Json Session::Summary() const {
  Json j;
  j["iteration"] = iteration();
  j["labels_added"] = labels_added_;
  j["rows"] = rows_.size();
  j["base"] = CountStatus(RowStatus::kBase);
  j["labeled"] = CountStatus(RowStatus::kLabeled);
  j["pool"] = CountStatus(RowStatus::kPool);
  j["reserved"] = CountStatus(RowStatus::kReserved);
  j["holdout"] = CountStatus(RowStatus::kHoldout);
  j["discarded"] = CountStatus(RowStatus::kDiscarded);
  j["base_metrics"] = base_metrics_.ToJson();
  j["metrics"] = history_.empty() ? base_metrics_.ToJson() : history_.back().metrics.ToJson();
  j["config"] = config_.ToJson();
  return j;
}

Oracle ReferenceOracle(const Session& session) {
  return [&session](const QueryBatch& batch) {
    std::vector<Answer> answers;
    for (const QueryItem& item : batch.items) {
      const SessionRow& row = session.rows()[*session.RowIndex(item.id)];
      answers.push_back({item.id, row.reference});
    }
    return answers;
  };
}

void RunSession(Session& session, const Oracle& oracle, const Budget& budget) {
  const auto start = std::chrono::steady_clock::now();
  const int first_iteration = session.iteration();
  const int first_labels = session.labels_added();
  while (session.iteration() < session.config().max_iterations) {
    const int ran = session.iteration() - first_iteration;
    const int added = session.labels_added() - first_labels;
    if (budget.max_iterations >= 0 && ran >= budget.max_iterations) break;
    if (budget.max_labels >= 0 && added >= budget.max_labels) break;
    if (budget.time_limit && std::chrono::steady_clock::now() - start >= *budget.time_limit) {
      break;
    }
    if (budget.target_f1) {
      const double f1 = session.history().empty() ? session.base_metrics().f1
                                                  : session.history().back().metrics.f1;
      if (f1 >= *budget.target_f1) break;
    }
    int limit = session.config().batch_size;
    if (budget.max_labels >= 0) limit = std::min(limit, budget.max_labels - added);
    const QueryBatch& batch = session.SelectBatch(limit);
    if (batch.items.empty()) break;
    const std::vector<Answer> answers = oracle(batch);
    const bool any_label =
        std::any_of(answers.begin(), answers.end(), [](const Answer& a) { return a.label; });
    session.IncorporateLabels(answers);
    // An all-skip batch would come straight back; stop instead of spinning.
    if (!any_label && !session.config().discard_skips) break;
  }
}

std::optional<int> LabelsToReach(const Session& session, double target) {
  if (session.base_metrics().f1 >= target) return 0;
  for (const HistoryPoint& p : session.history()) {
    if (p.metrics.f1 >= target) return p.labels_added;
  }
  return std::nullopt;
}

}  // namespace linelabel::al
