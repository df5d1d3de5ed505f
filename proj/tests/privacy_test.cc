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

#include "rdf/privacy.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "rdf/forest.h"
#include "test_util.h"

namespace rdf {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(Laplace, MedianIsZero) {
  EXPECT_EQ(LaplaceInverseCdf(1.0, 0.5), 0.0);
  EXPECT_EQ(LaplaceInverseCdf(7.0, 0.5), 0.0);
}

TEST(Laplace, InverseCdfInvertsCdf) {
  for (double rate : {0.1, 1.0, 10.0})
    for (double u : {1e-6, 0.01, 0.3, 0.5, 0.77, 0.999})
      EXPECT_NEAR(LaplaceCdf(rate, LaplaceInverseCdf(rate, u)), u, 1e-12);
}

TEST(Laplace, TailAndVariance) {
  Rng rng(17);
  const int n = 1'000'000;
  int tail = 0;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    double x = SampleLaplace(1.0, rng);
    tail += std::abs(x) > 2.0;
    sum += x;
    sq += x * x;
  }
  EXPECT_NEAR(tail / static_cast<double>(n), std::exp(-2.0), 0.001);
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sq / n, 2.0, 0.02);
}

TEST(Laplace, KolmogorovSmirnovDistanceIsSmall) {
  Rng rng(3);
  std::vector<double> xs(200'000);
  for (double& x : xs) x = SampleLaplace(0.5, rng);
  std::sort(xs.begin(), xs.end());
  double d = 0.0;
  const double n = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double f = LaplaceCdf(0.5, xs[i]);
    d = std::max({d, std::abs(f - i / n), std::abs(f - (i + 1) / n)});
  }
  // 1.63 / sqrt(n) is the 1% critical value.
  EXPECT_LT(d, 1.63 / std::sqrt(n));
}

TEST(Laplace, RejectsBadRate) {
  Rng rng(1);
  for (double r : {0.0, -1.0, kInf, std::nan("")})
    testing::ExpectCode(ErrorCode::kBadRate, [&] { SampleLaplace(r, rng); });
}

TEST(PerturbLeaf, NoisyRatio) {
  Rng rng(1);
  PerturbedLeaf l = PerturbLeafWithNoise(10, 8, 1.0, 1.0, rng);
  EXPECT_DOUBLE_EQ(l.theta_p, 0.55);
  EXPECT_EQ(l.theta_p_source, ThetaSource::kCounted);
}

TEST(PerturbLeaf, NegativeCountFallsBack) {
  Rng a(9), b(9);
  PerturbedLeaf l = PerturbLeafWithNoise(0, 4, -0.5, 0.0, a);
  EXPECT_EQ(l.theta_p_source, ThetaSource::kUniformRandom);
  EXPECT_EQ(l.theta_p, b.Uniform01());
  EXPECT_EQ(PerturbLeafWithNoise(3, 0, 0.0, -0.1, a).theta_p_source,
            ThetaSource::kUniformRandom);
}

TEST(PerturbLeaf, BothZeroFallsBack) {
  Rng rng(2);
  EXPECT_EQ(PerturbLeafWithNoise(0, 0, 0.0, 0.0, rng).theta_p_source,
            ThetaSource::kUniformRandom);
}

TEST(PerturbLeaf, OneSidedCounts) {
  Rng rng(2);
  EXPECT_EQ(PerturbLeafWithNoise(5, 0, 0.0, 0.0, rng).theta_p, 1.0);
  PerturbedLeaf l = PerturbLeafWithNoise(0, 3, 0.0, 0.0, rng);
  EXPECT_EQ(l.theta_p, 0.0);
  EXPECT_EQ(l.theta_p_source, ThetaSource::kCounted);
}

TEST(PerturbLeaf, AlwaysAFraction) {
  Rng rng(4);
  PrivacyParams p{0.5, 3};
  for (int i = 0; i < 20000; ++i) {
    PerturbedLeaf l = PerturbLeaf(rng.UniformIndex(4), rng.UniformIndex(4), p, rng);
    EXPECT_GE(l.theta_p, 0.0);
    EXPECT_LE(l.theta_p, 1.0);
  }
}

TEST(Ledger, ChargesSumExactly) {
  BudgetLedger ledger;
  for (int t = 0; t < 7; ++t) ledger.Charge("q", 0.137, 1, 7);
  EXPECT_EQ(ledger.total(), 0.137);
  EXPECT_EQ(ledger.entries().size(), 7u);
}

TEST(Ledger, MixedBasesAdd) {
  BudgetLedger ledger;
  ledger.Charge("a", 1.0, 1, 3);
  ledger.Charge("b", 1.0, 2, 3);
  ledger.Charge("c", 0.5);
  EXPECT_EQ(ledger.total(), 1.5);
}

class Privatized : public ::testing::Test {
 protected:
  void SetUp() override {
    Rng rng(21);
    train_ = testing::RandomMixed(400, rng);
  }

  Forest Trained(std::size_t k, int h = 4) {
    Forest f = BuildForest(train_.schema(), h, k, 8);
    Train(f, train_, 8);
    return f;
  }

  Dataset train_;
};

TEST_F(Privatized, LedgerTotalsEta) {
  Forest f = Trained(7);
  PrivatizeForest(f, 0.137, 3);
  EXPECT_EQ(f.ledger().total(), 0.137);
  EXPECT_EQ(f.ledger().entries().size(), 7u);
  EXPECT_TRUE(f.is_private());
}

TEST_F(Privatized, SecondPrivatizationRejected) {
  Forest f = Trained(3);
  PrivatizeForest(f, 1.0, 3);
  testing::ExpectCode(ErrorCode::kDomain, [&] { PrivatizeForest(f, 1.0, 4); });
  EXPECT_EQ(f.ledger().total(), 1.0);
}

TEST_F(Privatized, RejectsBadEta) {
  for (double eta : {0.0, -2.0, kInf}) {
    Forest f = Trained(3);
    testing::ExpectCode(ErrorCode::kBadEta, [&] { PrivatizeForest(f, eta, 1); });
  }
}

TEST_F(Privatized, UntrainedRejected) {
  Forest f = BuildForest(train_.schema(), 3, 3, 1);
  testing::ExpectCode(ErrorCode::kUntrained, [&] { PrivatizeForest(f, 1.0, 1); });
}

TEST_F(Privatized, RawCountsWithheld) {
  Forest f = Trained(3);
  PrivatizeForest(f, 1.0, 3);
  testing::ExpectCode(ErrorCode::kDomain, [&] { f.leaf_stats(0); });
  EXPECT_EQ(f.perturbed_leaves(0).size(), f.num_leaves());
}

TEST_F(Privatized, ZeroNoiseKeepsPlainPredictions) {
  Rng rng(30);
  Dataset test = testing::RandomMixed(300, rng);
  for (int trial = 0; trial < 10; ++trial) {
    Forest plain = BuildForest(train_.schema(), 5, 9, trial);
    Train(plain, train_, trial);
    Forest zero = BuildForest(train_.schema(), 5, 9, trial);
    Train(zero, train_, trial);
    PrivatizeForest(zero, 1.0, 99, {.zero_noise = true});
    EXPECT_FALSE(zero.is_private());
    for (std::size_t t = 0; t < plain.k(); ++t) {
      auto a = plain.leaf_thetas(t), b = zero.leaf_thetas(t);
      for (std::size_t j = 0; j < a.size(); ++j) {
        if (plain.leaf_stats(t)[j].total() > 0) EXPECT_EQ(a[j], b[j]);
      }
    }
  }
}

TEST_F(Privatized, SameSeedSameNoise) {
  Forest a = Trained(5), b = Trained(5);
  PrivatizeForest(a, 0.8, 6);
  PrivatizeForest(b, 0.8, 6);
  for (std::size_t t = 0; t < a.k(); ++t) {
    auto x = a.leaf_thetas(t), y = b.leaf_thetas(t);
    EXPECT_TRUE(std::equal(x.begin(), x.end(), y.begin()));
  }
}

TEST(Adjacency, OneChangedPoint) {
  Rng rng(12);
  Dataset a = testing::RandomBinary(30, 3, rng);
  std::vector<std::size_t> first(29);
  for (std::size_t i = 0; i < first.size(); ++i) first[i] = i;
  Dataset removed = a.Subset(first);
  EXPECT_NO_THROW(CheckAdjacent(a, removed));

  Dataset swapped = removed;
  std::vector<double> x{1, 1, 1};
  swapped.Add(x, a.label(29) == Label::kPositive ? Label::kNegative : Label::kPositive);
  if (!(swapped == a)) {
    EXPECT_NO_THROW(CheckAdjacent(a, swapped));
  }
  Dataset two = removed.Subset(std::vector<std::size_t>(first.begin(), first.end() - 1));
  testing::ExpectCode(ErrorCode::kNotAdjacent, [&] { CheckAdjacent(a, two); });
}

TEST(Adjacency, LeafCountsMoveByAtMostOne) {
  Rng rng(13);
  AttributeSchema schema = testing::MixedSchema();
  for (int trial = 0; trial < 100; ++trial) {
    Dataset a = testing::RandomMixed(50, rng);
    Dataset b = a.Subset(std::vector<std::size_t>{});
    std::size_t drop = rng.UniformIndex(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      if (i != drop) b.Add(a.values(i), a.label(i));
    TreeStructure tree = BuildRandomTree(schema, 3, rng);
    std::uint64_t total_change = 0;
    for (std::size_t leaf = 0; leaf < tree.num_leaves(); ++leaf) {
      for (Label l : {Label::kPositive, Label::kNegative}) {
        LeafQuery q{&tree, leaf, l};
        total_change += EvaluateLeafQuery(q, a) - EvaluateLeafQuery(q, b);
      }
    }
    EXPECT_EQ(total_change, 1u);
  }
}

TEST(RatioCheck, IdenticalDataGivesNearZero) {
  Rng rng(14);
  Dataset a = testing::RandomBinary(40, 2, rng);
  TreeStructure tree(1, {{0, 0.5}});
  RatioCheckResult r = DpRatioCheck(a, a, {&tree, 0, Label::kPositive}, 1.0,
                                    {.trials = 400'000, .min_bin_count = 10'000});
  EXPECT_GT(r.bins_compared, 0u);
  EXPECT_LT(r.max_log_ratio, 0.1);
}

TEST(RatioCheck, BoundedByEta) {
  Rng rng(15);
  Dataset a = testing::RandomBinary(40, 2, rng);
  std::vector<double> x{0, 0};
  Dataset b = a;
  b.Add(x, Label::kPositive);
  TreeStructure tree(1, {{0, 0.5}});
  RatioCheckResult r = DpRatioCheck(a, b, {&tree, 0, Label::kPositive}, 1.0);
  EXPECT_EQ(r.count_b, r.count_a + 1);
  EXPECT_GT(r.bins_compared, 3u);
  EXPECT_LE(r.max_log_ratio, 1.05);
  EXPECT_GT(r.max_log_ratio, 0.8);
}

TEST(RatioCheck, RejectsNonAdjacent) {
  Rng rng(16);
  Dataset a = testing::RandomBinary(40, 2, rng);
  Dataset b = testing::RandomBinary(40, 2, rng);
  TreeStructure tree(1, {{0, 0.5}});
  testing::ExpectCode(ErrorCode::kNotAdjacent, [&] {
    DpRatioCheck(a, b, {&tree, 0, Label::kPositive}, 1.0);
  });
}

}  // namespace
}  // namespace rdf
