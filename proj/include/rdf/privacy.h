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

#ifndef RDF_PRIVACY_H_
#define RDF_PRIVACY_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rdf/dataset.h"
#include "rdf/rng.h"
#include "rdf/tree.h"

namespace rdf {

class Forest;

// Laplace distribution with density (rate/2) * exp(-rate * |x|), i.e. scale
// 1/rate, mean 0 and variance 2/rate^2.
double LaplaceInverseCdf(double rate, double u);
double LaplaceCdf(double rate, double x);
// Inverse-CDF draw from one open-interval uniform. Throws BadRate unless
// rate is positive and finite.
double SampleLaplace(double rate, Rng& rng);

// Total budget eta split evenly over k per-tree queries.
struct PrivacyParams {
  double eta = 1.0;
  std::size_t k = 1;

  // Laplace rate eta/k used for every leaf counter, i.e. scale k/eta.
  double per_query_rate() const { return eta / static_cast<double>(k); }
  // Throws BadEta / DomainError on invalid values.
  void Validate() const;
};

// Sequential-composition accountant. Each charge is recorded as the exact
// fraction numer/denom of a base budget, so k charges of eta/k add up to
// exactly eta.
class BudgetLedger {
 public:
  struct Entry {
    std::string query;
    double base = 0.0;
    std::uint64_t numer = 1;
    std::uint64_t denom = 1;

    double epsilon() const {
      return base * static_cast<double>(numer) / static_cast<double>(denom);
    }
  };

  void Charge(std::string query, double base, std::uint64_t numer = 1,
              std::uint64_t denom = 1);

  std::span<const Entry> entries() const { return entries_; }
  double total() const;
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<Entry> entries_;
};

struct PerturbedLeaf {
  double n_p_plus = 0.0;
  double n_p_minus = 0.0;
  double theta_p = 0.0;
  // kCounted when theta_p is the ratio of the noisy counts.
  ThetaSource theta_p_source = ThetaSource::kUniformRandom;
};

// Applies explicit noise values to a leaf's counters. The uniform fallback
// fires exactly when a noisy count is negative or both are zero; the
// fallback draw comes from `fallback`.
PerturbedLeaf PerturbLeafWithNoise(std::uint64_t n_plus, std::uint64_t n_minus,
                                   double noise_plus, double noise_minus,
                                   Rng& fallback);

// Two independent Laplace draws at rate eta/k from `rng` (first for n_plus,
// then for n_minus), followed by the fallback draw if needed.
PerturbedLeaf PerturbLeaf(std::uint64_t n_plus, std::uint64_t n_minus,
                          const PrivacyParams& params, Rng& rng);

struct PrivatizeOptions {
  // Debug hook: every noise draw is replaced by 0. The result is not private
  // and is flagged as such.
  bool zero_noise = false;
};

// Perturbs every leaf of every tree (tree i uses its own substream of
// `seed`, leaves in index order), publishes theta_p, withholds the raw
// counts and charges eta/k per tree to the forest's ledger.
void PrivatizeForest(Forest& forest, double eta, std::uint64_t seed,
                     const PrivatizeOptions& options = {});

// Throws NotAdjacent unless the datasets differ in exactly one point (one
// insertion/removal or one substitution).
void CheckAdjacent(const Dataset& a, const Dataset& b);

// Count of training points with `label` in one leaf of one tree.
struct LeafQuery {
  const TreeStructure* tree = nullptr;
  std::size_t leaf = 0;
  Label label = Label::kPositive;
};

std::uint64_t EvaluateLeafQuery(const LeafQuery& query, const Dataset& ds);

struct RatioCheckOptions {
  std::size_t trials = 1'000'000;
  double bin_width = 0.5;
  // Only bins holding at least this many samples under both datasets are
  // compared; sparser bins are dominated by sampling noise.
  std::size_t min_bin_count = 10'000;
  // Queries sharing the budget; the leaf count gets Laplace noise at rate
  // eta/k.
  std::size_t k = 1;
  std::uint64_t seed = 0;
};

struct RatioCheckResult {
  double max_log_ratio = 0.0;
  std::size_t bins_compared = 0;
  std::uint64_t count_a = 0;
  std::uint64_t count_b = 0;
};

// Monte Carlo estimate of max over output bins S of |log(P_a(S) / P_b(S))|
// for the noisy leaf count on two adjacent datasets.
RatioCheckResult DpRatioCheck(const Dataset& a, const Dataset& b,
                              const LeafQuery& query, double eta,
                              const RatioCheckOptions& options = {});

}  // namespace rdf

#endif  // RDF_PRIVACY_H_
