// Copyright 2026 The rdforest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rdf/harness.h"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "test_util.h"

namespace rdf {
namespace {

ResultRow Row(int h, std::size_t k, std::size_t val_err, std::size_t test_err,
              std::size_t run = 0) {
  ResultRow r;
  r.h = h;
  r.k = k;
  r.run = run;
  r.validation_errors = val_err;
  r.validation_total = 100;
  r.test_errors = test_err;
  r.test_total = 100;
  return r;
}

ExperimentConfig SmallConfig(Method m) {
  ExperimentConfig cfg = ExperimentConfig::Defaults();
  cfg.dataset_name = "toy";
  cfg.method = m;
  cfg.h_grid = {3};
  cfg.k_grid = {5};
  cfg.runs = 2;
  cfg.seed = 11;
  return cfg;
}

Dataset Toy(std::size_t n = 300) {
  Rng rng(40);
  return testing::RandomMixed(n, rng);
}

TEST(ConfidenceInterval, Examples) {
  EXPECT_NEAR(ConfidenceInterval(50, 1372), 0.99, 0.005);
  EXPECT_EQ(ConfidenceInterval(0, 100), 0.0);
  EXPECT_NEAR(ConfidenceInterval(50, 100), 9.8, 1e-12);
  testing::ExpectCode(ErrorCode::kDomain, [] { ConfidenceInterval(0, 0); });
}

TEST(SelectBest, SingleCell) {
  BestCell b = SelectBest({Row(4, 7, 10, 12)});
  EXPECT_EQ(b.h, 4);
  EXPECT_EQ(b.k, 7u);
  EXPECT_DOUBLE_EQ(b.validation_error, 10.0);
  EXPECT_DOUBLE_EQ(b.test_error, 12.0);
}

TEST(SelectBest, TiesPreferFewerTrees) {
  BestCell b = SelectBest({Row(2, 5, 10, 1), Row(9, 3, 10, 2)});
  EXPECT_EQ(b.k, 3u);
  EXPECT_EQ(b.h, 9);
  b = SelectBest({Row(6, 3, 10, 1), Row(2, 3, 10, 2)});
  EXPECT_EQ(b.h, 2);
}

TEST(SelectBest, PoolsRunsBeforeComparing) {
  // Cell (1, 7) wins on run 0 alone but loses once pooled.
  std::vector<ResultRow> rows{Row(1, 7, 5, 0, 0), Row(1, 7, 30, 0, 1),
                              Row(1, 12, 12, 0, 0), Row(1, 12, 12, 0, 1)};
  EXPECT_EQ(SelectBest(rows).k, 12u);
  rows[1].validation_errors = 10;
  EXPECT_EQ(SelectBest(rows).k, 7u);
}

TEST(SelectBest, EmptyInput) {
  testing::ExpectCode(ErrorCode::kEmptyInput, [] { SelectBest({}); });
}

TEST(Method, NamesRoundTrip) {
  for (bool dp : {false, true}) {
    for (VotingRule r : {VotingRule::kMajority, VotingRule::kThreshold,
                         VotingRule::kProbabilistic}) {
      Method m{dp, r};
      EXPECT_EQ(ParseMethod(MethodName(m)), m);
    }
  }
  EXPECT_EQ(MethodName({true, VotingRule::kThreshold}), "dpRFTA");
  EXPECT_EQ(ParseMethod("N-DPRFMV"), (Method{false, VotingRule::kMajority}));
  testing::ExpectCode(ErrorCode::kConfig, [] { ParseMethod("forest"); });
}

TEST(Config, Validation) {
  ExperimentConfig cfg = ExperimentConfig::Defaults();
  EXPECT_EQ(cfg.h_grid.size(), 15u);
  EXPECT_EQ(cfg.k_grid.size(), 11u);
  EXPECT_NO_THROW(cfg.Validate());
  cfg.k_grid = {0};
  testing::ExpectCode(ErrorCode::kConfig, [&] { cfg.Validate(); });
  cfg = ExperimentConfig::Defaults();
  cfg.runs = 0;
  testing::ExpectCode(ErrorCode::kConfig, [&] { cfg.Validate(); });
  cfg = ExperimentConfig::Defaults();
  cfg.h_grid = {};
  testing::ExpectCode(ErrorCode::kConfig, [&] { cfg.Validate(); });
}

TEST(RunGrid, OneCellOneRowPerRun) {
  ExperimentConfig cfg = SmallConfig({false, VotingRule::kMajority});
  cfg.runs = 1;
  std::vector<ResultRow> rows = RunGrid(Toy(), cfg);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].test_total, 30u);
  EXPECT_EQ(rows[0].validation_total, 27u);
  EXPECT_EQ(rows[0].budget_spent, 0.0);
}

TEST(RunGrid, RowOrderAndDeterminism) {
  ExperimentConfig cfg = SmallConfig({true, VotingRule::kThreshold});
  cfg.h_grid = {2, 4};
  cfg.k_grid = {1, 3};
  std::vector<ResultRow> rows = RunGrid(Toy(), cfg);
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_EQ(rows[0].h, 2);
  EXPECT_EQ(rows[0].k, 1u);
  EXPECT_EQ(rows[1].run, 1u);
  EXPECT_EQ(rows[7].h, 4);
  std::ostringstream a, b;
  WriteRowsCsv(a, rows, false);
  WriteRowsCsv(b, RunGrid(Toy(), cfg), false);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().rfind("# rdforest", 0), 0u);
  EXPECT_EQ(a.str().find("wall_time"), std::string::npos);
}

TEST(RunGrid, PrivateRunsSpendEta) {
  ExperimentConfig cfg = SmallConfig({true, VotingRule::kMajority});
  for (const ResultRow& r : RunGrid(Toy(), cfg)) {
    EXPECT_DOUBLE_EQ(r.eta, 1000.0 / 243.0);
    EXPECT_EQ(r.budget_spent, r.eta);
  }
  cfg.eta_auto = false;
  cfg.eta = 0.25;
  for (const ResultRow& r : RunGrid(Toy(), cfg)) EXPECT_EQ(r.budget_spent, 0.25);
}

TEST(RunGrid, ErrorAccounting) {
  ExperimentConfig cfg = SmallConfig({false, VotingRule::kThreshold});
  cfg.runs = 3;
  for (const ResultRow& r : RunGrid(Toy(), cfg)) {
    EXPECT_LE(r.test_errors, r.test_total);
    EXPECT_DOUBLE_EQ(r.test_error, 100.0 * r.test_errors / r.test_total);
    EXPECT_DOUBLE_EQ(r.validation_error,
                     100.0 * r.validation_errors / r.validation_total);
  }
}

TEST(RunGrid, PureLeavesClassifyPerfectly) {
  // The label is x0 exactly, and x0 is the only attribute, so every leaf is
  // pure and every test point shares a leaf with training points.
  Dataset ds(AttributeSchema::AllBinary(1));
  Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> x{rng.Bernoulli(0.5) ? 1.0 : 0.0};
    ds.Add(x, x[0] == 1.0 ? Label::kPositive : Label::kNegative);
  }
  ExperimentConfig cfg = SmallConfig({false, VotingRule::kThreshold});
  for (const ResultRow& r : RunGrid(ds, cfg)) {
    EXPECT_EQ(r.test_errors, 0u);
    EXPECT_EQ(r.validation_errors, 0u);
  }
}

TEST(Table, FourMethods) {
  ExperimentConfig cfg = SmallConfig({false, VotingRule::kMajority});
  cfg.k_grid = {1, 3};
  std::vector<TableRow> rows = ReproduceTable(Toy(), cfg);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].method, "n-dpRFMV");
  EXPECT_EQ(rows[3].method, "dpRFTA");
  EXPECT_EQ(rows[0].n, 300u);
  EXPECT_EQ(rows[0].m, 3u);
  std::ostringstream out;
  WriteTableCsv(out, rows);
  EXPECT_NE(out.str().find("dataset,n,m,method,test_error,ci95,k,h,eta"),
            std::string::npos);
}

TEST(EtaSweep, OneRowPerEtaAndHeight) {
  ExperimentConfig cfg = SmallConfig({true, VotingRule::kThreshold});
  cfg.h_grid = {2, 3};
  cfg.runs = 1;
  std::vector<EtaSweepRow> rows = EtaSweep(Toy(), cfg, {0.5, 2.0}, 5);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].eta, 0.5);
  EXPECT_EQ(rows[1].h, 3);
  for (const EtaSweepRow& r : rows) {
    EXPECT_GE(r.best.k, 1u);
    EXPECT_LE(r.best.k, 5u);
  }
  testing::ExpectCode(ErrorCode::kConfig, [&] { EtaSweep(Toy(), cfg, {}, 5); });
}

}  // namespace
}  // namespace rdf
