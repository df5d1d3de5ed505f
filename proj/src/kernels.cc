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

#include "rdf/kernels.h"

#include <cstdint>

#include "rdf/forest.h"

namespace rdf::kernels {
namespace {

inline void CountInto(LeafStats& leaf, Label label) {
  if (label == Label::kPositive) {
    ++leaf.n_plus;
  } else {
    ++leaf.n_minus;
  }
}

inline void ScoreOne(const Forest& forest, std::span<const double> values,
                     std::uint32_t& votes, double& mean) {
  std::uint32_t v = 0;
  double sum = 0.0;
  for (std::size_t t = 0; t < forest.k(); ++t) {
    double theta = forest.leaf_thetas(t)[forest.tree(t).Route(values)];
    v += theta > 0.5 ? 1u : 0u;
    sum += theta;
  }
  votes = v;
  mean = sum / static_cast<double>(forest.k());
}

}  // namespace

void AccumulateLeafCountsSerial(std::span<const TreeStructure> trees,
                                const Dataset& ds, std::span<LeafStats> out) {
  if (trees.empty()) return;
  const std::size_t leaves = trees[0].num_leaves();
  for (std::size_t i = 0; i < ds.size(); ++i) {
    auto values = ds.values(i);
    Label label = ds.label(i);
    for (std::size_t t = 0; t < trees.size(); ++t) {
      CountInto(out[t * leaves + trees[t].Route(values)], label);
    }
  }
}

void AccumulateLeafCountsParallel(std::span<const TreeStructure> trees,
                                  const Dataset& ds, std::span<LeafStats> out) {
  if (trees.empty()) return;
  const std::size_t leaves = trees[0].num_leaves();
  const auto k = static_cast<std::int64_t>(trees.size());
  const std::size_t n = ds.size();
#pragma omp parallel for schedule(static)
  for (std::int64_t t = 0; t < k; ++t) {
    const TreeStructure& tree = trees[static_cast<std::size_t>(t)];
    LeafStats* base = out.data() + static_cast<std::size_t>(t) * leaves;
    for (std::size_t i = 0; i < n; ++i) {
      CountInto(base[tree.Route(ds.values(i))], ds.label(i));
    }
  }
}

PointScores ScorePointsSerial(const Forest& forest, const Dataset& ds) {
  PointScores s;
  s.votes.resize(ds.size());
  s.mean_theta.resize(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    ScoreOne(forest, ds.values(i), s.votes[i], s.mean_theta[i]);
  }
  return s;
}

PointScores ScorePointsParallel(const Forest& forest, const Dataset& ds) {
  PointScores s;
  s.votes.resize(ds.size());
  s.mean_theta.resize(ds.size());
  const auto n = static_cast<std::int64_t>(ds.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    auto u = static_cast<std::size_t>(i);
    ScoreOne(forest, ds.values(u), s.votes[u], s.mean_theta[u]);
  }
  return s;
}

}  // namespace rdf::kernels
