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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "linelabel/errors.h"
#include "linelabel/random.h"
#include "support/learner_oracles.h"

namespace linelabel::al {
namespace {

namespace fs = std::filesystem;

// Rows from a noisy two-feature problem, ten lines per commit.
std::vector<SessionRow> MakeRows(uint64_t seed, int count) {
  ml::Dataset data = testing::RandomDataset(seed, count, 4, 6);
  std::vector<SessionRow> rows;
  for (size_t i = 0; i < data.rows(); ++i) {
    SessionRow row;
    row.id = "c" + std::to_string(i / 10) + ":f.c:post:" + std::to_string(i % 10 + 1);
    row.x = data.x[i];
    row.reference = data.y[i];
    rows.push_back(std::move(row));
  }
  return rows;
}

SessionConfig SmallConfig(uint64_t seed) {
  SessionConfig config;
  config.seed = seed;
  config.batch_size = 5;
  config.learners.random_forest.n_trees = 10;
  return config;
}

fs::path FreshDir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("linelabel_al_test_" + name);
  fs::remove_all(dir);
  return dir;
}

TEST(VoteEntropyTest, KnownValues) {
  EXPECT_DOUBLE_EQ(VoteEntropy(std::vector<int>{1, 1, 1}), 0.0);
  EXPECT_DOUBLE_EQ(VoteEntropy(std::vector<int>{1, 0}), 1.0);
  EXPECT_NEAR(VoteEntropy(std::vector<int>{1, 1, 0}), 0.918296, 1e-6);
  EXPECT_THROW(VoteEntropy(std::vector<int>{}), ContractError);
}

// Entropy depends only on the vote counts, is symmetric in the two
// labels and grows as the split approaches even.
TEST(VoteEntropyPropertyTest, PermutationSwapAndMonotonicity) {
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const size_t n = 1 + rng.Index(9);
    std::vector<int> votes(n);
    for (int& v : votes) v = static_cast<int>(rng.Index(2));
    const double h = VoteEntropy(votes);
    EXPECT_GE(h, 0.0);
    EXPECT_LE(h, 1.0 + 1e-12);
    std::vector<int> shuffled = votes;
    rng.Shuffle(shuffled);
    EXPECT_DOUBLE_EQ(VoteEntropy(shuffled), h);
    std::vector<int> swapped = votes;
    for (int& v : swapped) v = 1 - v;
    EXPECT_DOUBLE_EQ(VoteEntropy(swapped), h);
  }
  for (int n = 2; n <= 10; ++n) {
    double prev = -1.0;
    for (int ones = 0; ones <= n / 2; ++ones) {
      std::vector<int> votes(static_cast<size_t>(n), 0);
      std::fill(votes.begin(), votes.begin() + ones, 1);
      const double h = VoteEntropy(votes);
      EXPECT_GT(h, prev);
      prev = h;
    }
  }
}

TEST(SplitHoldoutTest, KeepsCommitsTogether) {
  auto rows = MakeRows(1, 200);
  auto held = SplitHoldoutByCommit(rows, 0.4, 5);
  EXPECT_EQ(held.size() % 10, 0u);
  EXPECT_GE(held.size(), 80u);
  EXPECT_EQ(held, SplitHoldoutByCommit(rows, 0.4, 5));
  for (const SessionRow& row : rows) {
    const std::string commit = row.id.substr(0, row.id.find(':'));
    const bool in = held.count(row.id) > 0;
    EXPECT_EQ(held.count(commit + ":f.c:post:1") > 0, in) << row.id;
  }
}

TEST(SessionTest, StatusesPartitionTheRows) {
  Session s = Session::Create(MakeRows(2, 200), SmallConfig(1));
  const size_t total = s.CountStatus(RowStatus::kBase) + s.CountStatus(RowStatus::kPool) +
                       s.CountStatus(RowStatus::kHoldout);
  EXPECT_EQ(total, 200u);
  const size_t training = 200 - s.CountStatus(RowStatus::kHoldout);
  EXPECT_EQ(s.CountStatus(RowStatus::kBase),
            static_cast<size_t>(std::llround(0.2 * static_cast<double>(training))));
  EXPECT_EQ(s.committee().size(), 2u);
}

TEST(SessionTest, BatchIsTopEntropyWithAscendingIdsOnTies) {
  Session s = Session::Create(MakeRows(3, 200), SmallConfig(4));
  // Score every pool row before selecting.
  std::vector<QueryItem> expected;
  for (size_t r = 0; r < s.rows().size(); ++r) {
    if (s.status(r) != RowStatus::kPool) continue;
    QueryItem item;
    item.id = s.rows()[r].id;
    item.votes = s.committee().Votes(s.rows()[r].x);
    item.entropy = VoteEntropy(item.votes);
    expected.push_back(item);
  }
  std::sort(expected.begin(), expected.end(), [](const QueryItem& a, const QueryItem& b) {
    if (a.entropy != b.entropy) return a.entropy > b.entropy;
    return a.id < b.id;
  });
  const QueryBatch& batch = s.SelectBatch();
  ASSERT_EQ(batch.items.size(), 5u);
  for (size_t i = 0; i < batch.items.size(); ++i) {
    EXPECT_EQ(batch.items[i].id, expected[i].id);
    EXPECT_EQ(s.status(*s.RowIndex(batch.items[i].id)), RowStatus::kReserved);
  }
  // Asking again returns the same pending batch.
  EXPECT_EQ(&s.SelectBatch(), &*s.pending());
}

TEST(SessionTest, LabelConflicts) {
  Session s = Session::Create(MakeRows(3, 120), SmallConfig(2));
  EXPECT_THROW(s.IncorporateLabels({}), ConflictError);
  const QueryBatch batch = s.SelectBatch();
  std::string not_pending;
  for (size_t r = 0; r < s.rows().size(); ++r) {
    if (s.status(r) == RowStatus::kPool) not_pending = s.rows()[r].id;
  }
  EXPECT_THROW(s.IncorporateLabels({{not_pending, 1}}), ConflictError);
  EXPECT_THROW(s.IncorporateLabels({{"nope", 1}}), ConflictError);
  EXPECT_THROW(s.IncorporateLabels({{batch.items[0].id, 1}, {batch.items[0].id, 0}}),
               ConflictError);
  EXPECT_THROW(s.IncorporateLabels({{batch.items[0].id, 2}}), ContractError);
  // Nothing above changed the session.
  EXPECT_EQ(s.iteration(), 0);
  EXPECT_TRUE(s.pending().has_value());

  const HistoryPoint& p = s.IncorporateLabels({{batch.items[0].id, 1}, {batch.items[1].id, {}}});
  EXPECT_EQ(p.iteration, 1);
  EXPECT_EQ(p.labels_added, 1);
  EXPECT_EQ(s.status(*s.RowIndex(batch.items[0].id)), RowStatus::kLabeled);
  EXPECT_EQ(s.status(*s.RowIndex(batch.items[1].id)), RowStatus::kPool);
  EXPECT_EQ(s.status(*s.RowIndex(batch.items[4].id)), RowStatus::kPool);
  EXPECT_FALSE(s.pending().has_value());
}

TEST(SessionTest, RunsToPoolExhaustion) {
  Session s = Session::Create(MakeRows(5, 120), SmallConfig(3));
  const size_t pool = s.pool_count();
  RunSession(s, ReferenceOracle(s), Budget{});
  EXPECT_EQ(s.pool_count(), 0u);
  EXPECT_EQ(static_cast<size_t>(s.labels_added()), pool);
  auto curve = s.LearningCurve();
  ASSERT_FALSE(curve.empty());
  for (size_t i = 1; i < curve.size(); ++i) EXPECT_GT(curve[i].first, curve[i - 1].first);
  EXPECT_TRUE(s.SelectBatch().items.empty());
}

TEST(SessionTest, BudgetLimitsIterationsAndLabels) {
  Session s = Session::Create(MakeRows(5, 200), SmallConfig(3));
  Budget budget;
  budget.max_iterations = 3;
  RunSession(s, ReferenceOracle(s), budget);
  EXPECT_EQ(s.iteration(), 3);
  Budget labels;
  labels.max_labels = 7;
  RunSession(s, ReferenceOracle(s), labels);
  EXPECT_GE(s.labels_added(), 15 + 7);
  EXPECT_LT(s.labels_added(), 15 + 7 + 5);
}

TEST(SessionTest, SameSeedSameRun) {
  auto run = [] {
    Session s = Session::Create(MakeRows(7, 150), SmallConfig(9));
    Budget budget;
    budget.max_iterations = 5;
    RunSession(s, ReferenceOracle(s), budget);
    return s.Summary().dump() + s.committee().ToJson().dump();
  };
  EXPECT_EQ(run(), run());
}

TEST(SessionTest, RandomStrategyIsSeeded) {
  SessionConfig config = SmallConfig(4);
  config.strategy = Strategy::kRandom;
  Session a = Session::Create(MakeRows(7, 150), config);
  Session b = Session::Create(MakeRows(7, 150), config);
  std::vector<std::string> ids_a, ids_b;
  for (const auto& item : a.SelectBatch().items) ids_a.push_back(item.id);
  for (const auto& item : b.SelectBatch().items) ids_b.push_back(item.id);
  EXPECT_EQ(ids_a, ids_b);
  EXPECT_EQ(ids_a.size(), 5u);
}

TEST(PersistentSessionTest, ReopenReplaysToTheSameState) {
  const fs::path dir = FreshDir("reopen");
  {
    Session s = Session::Create(dir, MakeRows(8, 150), SmallConfig(6));
    Budget budget;
    budget.max_iterations = 3;
    RunSession(s, ReferenceOracle(s), budget);
    s.SelectBatch();  // leave a batch pending
  }
  Session reopened = Session::Open(dir);
  EXPECT_EQ(reopened.iteration(), 3);
  ASSERT_TRUE(reopened.pending().has_value());

  Session replay = Session::Create(MakeRows(8, 150), SmallConfig(6));
  Budget budget;
  budget.max_iterations = 3;
  RunSession(replay, ReferenceOracle(replay), budget);
  const QueryBatch& batch = replay.SelectBatch();
  EXPECT_EQ(reopened.Summary(), replay.Summary());
  EXPECT_EQ(reopened.committee().ToJson(), replay.committee().ToJson());
  ASSERT_EQ(reopened.pending()->items.size(), batch.items.size());
  for (size_t i = 0; i < batch.items.size(); ++i) {
    EXPECT_EQ(reopened.pending()->items[i].id, batch.items[i].id);
  }
  EXPECT_THROW(Session::Create(dir, MakeRows(8, 150), SmallConfig(6)), ContractError);
}

// A crash between accepting labels and finishing the retrain loses the
// history line and the committee snapshot; reopening recomputes both.
TEST(PersistentSessionTest, RecoversFromCrashAfterLabels) {
  const fs::path dir = FreshDir("crash");
  HistoryPoint last;
  std::string committee;
  {
    Session s = Session::Create(dir, MakeRows(9, 150), SmallConfig(2));
    Budget budget;
    budget.max_iterations = 2;
    RunSession(s, ReferenceOracle(s), budget);
    last = s.history().back();
    committee = s.committee().ToJson().dump();
  }
  std::vector<std::string> lines;
  {
    std::ifstream in(dir / "history.jsonl");
    for (std::string line; std::getline(in, line);) lines.push_back(line);
  }
  ASSERT_EQ(lines.size(), 2u);
  {
    std::ofstream out(dir / "history.jsonl", std::ios::trunc);
    out << lines[0] << "\n";
  }
  fs::remove(dir / "committee.json");

  Session reopened = Session::Open(dir);
  EXPECT_EQ(reopened.iteration(), 2);
  EXPECT_EQ(reopened.history().back().ToJson(), last.ToJson());
  EXPECT_EQ(reopened.committee().ToJson().dump(), committee);
  // The recomputed history line is written back.
  EXPECT_EQ(Session::Open(dir).history().size(), 2u);
}

TEST(PersistentSessionTest, CorruptEventLogIsIntegrityError) {
  const fs::path dir = FreshDir("corrupt");
  { Session::Create(dir, MakeRows(9, 100), SmallConfig(2)); }
  std::ofstream(dir / "events.jsonl", std::ios::app) << R"({"event": "teleport"})" << "\n";
  EXPECT_THROW(Session::Open(dir), IntegrityError);
}

TEST(SessionConfigTest, JsonRoundTripAndUnknownKeys) {
  SessionConfig config = SmallConfig(3);
  config.strategy = Strategy::kRandom;
  Json json = config.ToJson();
  EXPECT_EQ(SessionConfig::FromJson(json).ToJson(), json);
  json["batchsize"] = 4;
  EXPECT_THROW(SessionConfig::FromJson(json), ContractError);
}

TEST(LabelsToReachTest, ReadsTheHistory) {
  Session s = Session::Create(MakeRows(10, 200), SmallConfig(5));
  RunSession(s, ReferenceOracle(s), Budget{});
  EXPECT_EQ(LabelsToReach(s, 2.0), std::nullopt);
  if (s.base_metrics().f1 >= 0.1) EXPECT_EQ(LabelsToReach(s, 0.1), 0);
  double best = s.base_metrics().f1;
  for (const auto& p : s.history()) best = std::max(best, p.metrics.f1);
  auto at = LabelsToReach(s, best);
  ASSERT_TRUE(at.has_value());
  EXPECT_LE(*at, s.labels_added());
}

}  // namespace
}  // namespace linelabel::al
