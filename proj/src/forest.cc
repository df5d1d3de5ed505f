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

#include "rdf/forest.h"

#include <cmath>
#include <string>

#include "rdf/errors.h"
#include "rdf/kernels.h"

namespace rdf {

std::string_view VotingRuleName(VotingRule rule) {
  switch (rule) {
    case VotingRule::kMajority: return "majority";
    case VotingRule::kThreshold: return "threshold";
    case VotingRule::kProbabilistic: return "probabilistic";
  }
  return "unknown";
}

Forest::Forest(AttributeSchema schema, int height,
               std::vector<TreeStructure> trees)
    : schema_(std::move(schema)), height_(height), trees_(std::move(trees)) {
  if (trees_.empty()) throw Error(ErrorCode::kDomain, "a forest needs k >= 1");
  if (height < 1 || height > kMaxHeight) {
    throw Error(ErrorCode::kDomain,
                "forest height out of range: " + std::to_string(height));
  }
  for (const TreeStructure& t : trees_) {
    if (t.height() != height)
      throw Error(ErrorCode::kDomain, "all trees must share the forest height");
    for (const InnerNode& n : t.nodes()) {
      if (n.attribute >= schema_.size())
        throw Error(ErrorCode::kDomain, "tree tests an attribute outside the schema");
    }
  }
}

Forest Forest::RestorePlain(AttributeSchema schema, int height,
                            std::vector<TreeStructure> trees,
                            std::vector<std::vector<LeafStats>> leaves) {
  Forest f(std::move(schema), height, std::move(trees));
  if (leaves.size() != f.k())
    throw Error(ErrorCode::kParse, "leaf table count does not match k");
  f.stats_.reserve(f.k() * f.num_leaves());
  f.thetas_.reserve(f.k() * f.num_leaves());
  for (const auto& tree_leaves : leaves) {
    if (tree_leaves.size() != f.num_leaves())
      throw Error(ErrorCode::kParse, "leaf table size does not match 2^h");
    for (const LeafStats& l : tree_leaves) {
      f.stats_.push_back(l);
      f.thetas_.push_back(l.theta);
    }
  }
  f.trained_ = true;
  return f;
}

Forest Forest::RestorePrivate(AttributeSchema schema, int height,
                              std::vector<TreeStructure> trees, double eta,
                              bool zero_noise,
                              std::vector<std::vector<PerturbedLeaf>> leaves) {
  Forest f(std::move(schema), height, std::move(trees));
  if (leaves.size() != f.k())
    throw Error(ErrorCode::kParse, "leaf table count does not match k");
  for (const auto& tree_leaves : leaves) {
    if (tree_leaves.size() != f.num_leaves())
      throw Error(ErrorCode::kParse, "leaf table size does not match 2^h");
    for (const PerturbedLeaf& l : tree_leaves) {
      f.perturbed_.push_back(l);
      f.thetas_.push_back(l.theta_p);
    }
  }
  f.trained_ = true;
  f.mode_ = ForestMode::kPrivate;
  f.eta_ = eta;
  f.zero_noise_ = zero_noise;
  for (std::size_t t = 0; t < f.k(); ++t) {
    f.ledger_.Charge("tree " + std::to_string(t) + " leaf counts", eta, 1,
                     f.k());
  }
  return f;
}

void Forest::RequireTrained() const {
  if (!trained_) throw Error(ErrorCode::kUntrained, "forest is not trained");
}

std::span<const LeafStats> Forest::leaf_stats(std::size_t t) const {
  RequireTrained();
  if (mode_ == ForestMode::kPrivate) {
    throw Error(ErrorCode::kDomain,
                "raw leaf counts are not published by a private forest");
  }
  return {stats_.data() + t * num_leaves(), num_leaves()};
}

std::span<const PerturbedLeaf> Forest::perturbed_leaves(std::size_t t) const {
  RequireTrained();
  if (mode_ != ForestMode::kPrivate)
    throw Error(ErrorCode::kDomain, "forest has not been privatized");
  return {perturbed_.data() + t * num_leaves(), num_leaves()};
}

Forest BuildForest(const AttributeSchema& schema, int height, std::size_t k,
                   std::uint64_t seed) {
  if (k < 1) throw Error(ErrorCode::kDomain, "a forest needs k >= 1");
  std::vector<TreeStructure> trees;
  trees.reserve(k);
  for (std::size_t t = 0; t < k; ++t) {
    Rng rng = Substream(seed, StreamTag::kStructure, {t});
    trees.push_back(BuildRandomTree(schema, height, rng));
  }
  return Forest(schema, height, std::move(trees));
}

void Train(Forest& forest, const Dataset& train, std::uint64_t seed) {
  if (forest.trained_)
    throw Error(ErrorCode::kAlreadyTrained, "forest is already trained");
  if (!(train.schema() == forest.schema_) && !train.empty()) {
    throw Error(ErrorCode::kSchemaViolation,
                "training data does not match the forest schema");
  }
  const std::size_t leaves = forest.num_leaves();
  forest.stats_.assign(forest.k() * leaves, LeafStats{});
  kernels::AccumulateLeafCountsParallel(forest.trees_, train, forest.stats_);
  forest.thetas_.resize(forest.stats_.size());
  for (std::size_t t = 0; t < forest.k(); ++t) {
    std::span<LeafStats> tree_leaves(forest.stats_.data() + t * leaves, leaves);
    Rng rng = Substream(seed, StreamTag::kEmptyLeaf, {t});
    FinalizeLeaves(tree_leaves, rng);
    for (std::size_t j = 0; j < leaves; ++j)
      forest.thetas_[t * leaves + j] = tree_leaves[j].theta;
  }
  forest.trained_ = true;
}

Prediction ClassifyMajority(const Forest& forest,
                            std::span<const double> values) {
  if (!forest.trained()) throw Error(ErrorCode::kUntrained, "forest is not trained");
  std::size_t votes = 0;
  for (std::size_t t = 0; t < forest.k(); ++t) {
    if (forest.leaf_thetas(t)[forest.tree(t).Route(values)] > 0.5) ++votes;
  }
  Prediction p;
  p.label = 2 * votes > forest.k() ? Label::kPositive : Label::kNegative;
  p.score = static_cast<double>(votes) / static_cast<double>(forest.k());
  return p;
}

namespace {

double MeanTheta(const Forest& forest, std::span<const double> values) {
  if (!forest.trained()) throw Error(ErrorCode::kUntrained, "forest is not trained");
  double sum = 0.0;
  for (std::size_t t = 0; t < forest.k(); ++t)
    sum += forest.leaf_thetas(t)[forest.tree(t).Route(values)];
  return sum / static_cast<double>(forest.k());
}

}  // namespace

Prediction ClassifyThreshold(const Forest& forest,
                             std::span<const double> values) {
  double mean = MeanTheta(forest, values);
  return {mean > 0.5 ? Label::kPositive : Label::kNegative, mean};
}

Prediction ClassifyProbabilistic(const Forest& forest,
                                 std::span<const double> values, Rng& rng) {
  double mean = MeanTheta(forest, values);
  return {rng.Uniform01() < mean ? Label::kPositive : Label::kNegative, mean};
}

Prediction Classify(const Forest& forest, std::span<const double> values,
                    VotingRule rule, Rng& rng) {
  switch (rule) {
    case VotingRule::kMajority: return ClassifyMajority(forest, values);
    case VotingRule::kThreshold: return ClassifyThreshold(forest, values);
    case VotingRule::kProbabilistic:
      return ClassifyProbabilistic(forest, values, rng);
  }
  throw Error(ErrorCode::kDomain, "unknown voting rule");
}

std::size_t RecommendedK(double n, double c, double delta) {
  if (!(delta > 0.0 && delta <= 0.5)) {
    throw Error(ErrorCode::kBadDelta,
                "delta must lie in (0, 1/2], got " + std::to_string(delta));
  }
  if (!(c > 0.0) || !std::isfinite(c))
    throw Error(ErrorCode::kDomain, "C must be positive");
  if (!(n >= 2.0) || !std::isfinite(n))
    throw Error(ErrorCode::kDomain, "n must be at least 2");
  double raw = (1.0 + c) * std::log(n) / (2.0 * delta * delta);
  auto k = static_cast<std::size_t>(std::ceil(raw));
  if (k % 2 == 0) ++k;
  return k;
}

ErrorCount CountErrors(const Forest& forest, const Dataset& ds, VotingRule rule,
                       std::uint64_t vote_seed) {
  if (!forest.trained()) throw Error(ErrorCode::kUntrained, "forest is not trained");
  kernels::PointScores scores = kernels::ScorePointsParallel(forest, ds);
  ErrorCount out;
  out.total = ds.size();
  for (std::size_t i = 0; i < ds.size(); ++i) {
    Label predicted = Label::kNegative;
    switch (rule) {
      case VotingRule::kMajority:
        predicted = 2 * static_cast<std::size_t>(scores.votes[i]) > forest.k()
                        ? Label::kPositive
                        : Label::kNegative;
        break;
      case VotingRule::kThreshold:
        predicted = scores.mean_theta[i] > 0.5 ? Label::kPositive
                                               : Label::kNegative;
        break;
      case VotingRule::kProbabilistic: {
        Rng rng = Substream(vote_seed, StreamTag::kVote, {i});
        predicted = rng.Uniform01() < scores.mean_theta[i] ? Label::kPositive
                                                           : Label::kNegative;
        break;
      }
    }
    if (predicted != ds.label(i)) ++out.errors;
  }
  return out;
}

}  // namespace rdf
