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

#ifndef RDF_FOREST_H_
#define RDF_FOREST_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "rdf/dataset.h"
#include "rdf/privacy.h"
#include "rdf/rng.h"
#include "rdf/tree.h"

namespace rdf {

enum class ForestMode : std::uint8_t { kPlain, kPrivate };

enum class VotingRule : std::uint8_t { kMajority, kThreshold, kProbabilistic };

std::string_view VotingRuleName(VotingRule rule);

struct Prediction {
  Label label = Label::kNegative;
  // Fraction of positive votes for majority voting, mean leaf theta for the
  // two averaging rules.
  double score = 0.0;
};

// k random trees of a common height together with their leaf statistics.
// A forest is built untrained, trained exactly once, and optionally
// privatized exactly once; after privatization the raw counters are dropped
// and classification reads only the perturbed leaf fractions.
class Forest {
 public:
  Forest(AttributeSchema schema, int height, std::vector<TreeStructure> trees);

  // Reassemble a trained plain forest (used by the model reader).
  static Forest RestorePlain(AttributeSchema schema, int height,
                             std::vector<TreeStructure> trees,
                             std::vector<std::vector<LeafStats>> leaves);
  // Reassemble a privatized forest from its published leaf fractions.
  static Forest RestorePrivate(AttributeSchema schema, int height,
                               std::vector<TreeStructure> trees, double eta,
                               bool zero_noise,
                               std::vector<std::vector<PerturbedLeaf>> leaves);

  std::size_t k() const { return trees_.size(); }
  int height() const { return height_; }
  std::size_t num_leaves() const { return std::size_t{1} << height_; }
  const AttributeSchema& schema() const { return schema_; }
  std::span<const TreeStructure> trees() const { return trees_; }
  const TreeStructure& tree(std::size_t t) const { return trees_[t]; }

  ForestMode mode() const { return mode_; }
  bool trained() const { return trained_; }
  bool zero_noise() const { return zero_noise_; }
  // True only for a privatized forest with real noise.
  bool is_private() const { return mode_ == ForestMode::kPrivate && !zero_noise_; }
  double eta() const { return eta_; }
  const BudgetLedger& ledger() const { return ledger_; }

  // Raw counters of tree t. Throws Untrained before training and
  // DomainError once the forest is private.
  std::span<const LeafStats> leaf_stats(std::size_t t) const;
  // Perturbed leaves of tree t; only for private forests.
  std::span<const PerturbedLeaf> perturbed_leaves(std::size_t t) const;
  // Published leaf fractions (theta, or theta_p when private) of tree t.
  std::span<const double> leaf_thetas(std::size_t t) const {
    return {thetas_.data() + t * num_leaves(), num_leaves()};
  }

 private:
  friend void Train(Forest& forest, const Dataset& train, std::uint64_t seed);
  friend void PrivatizeForest(Forest& forest, double eta, std::uint64_t seed,
                              const PrivatizeOptions& options);

  void RequireTrained() const;

  AttributeSchema schema_;
  int height_ = 0;
  std::vector<TreeStructure> trees_;
  ForestMode mode_ = ForestMode::kPlain;
  bool trained_ = false;
  bool zero_noise_ = false;
  double eta_ = 0.0;
  BudgetLedger ledger_;
  // Tree-major, num_leaves() entries per tree.
  std::vector<LeafStats> stats_;
  std::vector<PerturbedLeaf> perturbed_;
  std::vector<double> thetas_;
};

// Tree t is drawn from the substream (seed, t); no data is read.
Forest BuildForest(const AttributeSchema& schema, int height, std::size_t k,
                   std::uint64_t seed);

// Counts every training point into every tree (parallel across trees), then
// draws uniform thetas for empty leaves from the per-tree substreams of
// `seed`. Throws AlreadyTrained on a second call.
void Train(Forest& forest, const Dataset& train, std::uint64_t seed);

// Tree votes + iff its leaf fraction is > 1/2; the forest says + iff
// strictly more than k/2 trees vote +.
Prediction ClassifyMajority(const Forest& forest,
                            std::span<const double> values);
// + iff the mean leaf fraction is > 1/2.
Prediction ClassifyThreshold(const Forest& forest,
                             std::span<const double> values);
// + with probability equal to the mean leaf fraction, using one fresh draw
// from `rng`.
Prediction ClassifyProbabilistic(const Forest& forest,
                                 std::span<const double> values, Rng& rng);

Prediction Classify(const Forest& forest, std::span<const double> values,
                    VotingRule rule, Rng& rng);

// ceil((1 + C) * ln(n) / (2 * delta^2)), bumped to the next odd integer.
// delta must lie in (0, 1/2]; throws BadDelta otherwise.
std::size_t RecommendedK(double n, double c, double delta);

struct ErrorCount {
  std::size_t errors = 0;
  std::size_t total = 0;

  double rate() const {
    return total == 0 ? 0.0
                      : static_cast<double>(errors) / static_cast<double>(total);
  }
};

// Misclassifications of `ds` under `rule`. Probabilistic votes for point i
// come from the substream (vote_seed, i), so results do not depend on the
// thread count.
ErrorCount CountErrors(const Forest& forest, const Dataset& ds, VotingRule rule,
                       std::uint64_t vote_seed = 0);

}  // namespace rdf

#endif  // RDF_FOREST_H_
