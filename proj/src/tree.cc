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

#include "rdf/tree.h"

#include <string>

#include "rdf/errors.h"

namespace rdf {

TreeStructure::TreeStructure(int height, std::vector<InnerNode> nodes)
    : height_(height), nodes_(std::move(nodes)) {
  if (height < 1 || height > kMaxHeight) {
    throw Error(ErrorCode::kDomain,
                "tree height must be in [1, " + std::to_string(kMaxHeight) +
                    "], got " + std::to_string(height));
  }
  if (nodes_.size() != (std::size_t{1} << height) - 1) {
    throw Error(ErrorCode::kDomain,
                "a complete tree of height " + std::to_string(height) +
                    " needs " + std::to_string((std::size_t{1} << height) - 1) +
                    " inner nodes, got " + std::to_string(nodes_.size()));
  }
}

TreeStructure BuildRandomTree(const AttributeSchema& schema, int height,
                              Rng& rng) {
  if (height < 1 || height > kMaxHeight) {
    throw Error(ErrorCode::kDomain,
                "tree height must be in [1, " + std::to_string(kMaxHeight) +
                    "], got " + std::to_string(height));
  }
  const std::size_t inner = (std::size_t{1} << height) - 1;
  std::vector<InnerNode> nodes(inner);
  for (InnerNode& n : nodes) {
    n.attribute = static_cast<std::uint32_t>(rng.UniformIndex(schema.size()));
    const Attribute& a = schema[n.attribute];
    if (a.kind == AttributeKind::kBinary) {
      n.threshold = 0.5;
    } else if (a.min == a.max) {
      n.threshold = a.min;
    } else {
      n.threshold = rng.Uniform(a.min, a.max);
    }
  }
  return TreeStructure(height, std::move(nodes));
}

void FinalizeLeaves(std::span<LeafStats> leaves, Rng& rng) {
  for (LeafStats& leaf : leaves) {
    if (leaf.total() > 0) {
      leaf.theta = static_cast<double>(leaf.n_plus) /
                   static_cast<double>(leaf.total());
      leaf.theta_source = ThetaSource::kCounted;
    } else {
      leaf.theta = rng.Uniform01();
      leaf.theta_source = ThetaSource::kUniformRandom;
    }
  }
}

std::vector<LeafStats> TrainCounts(const TreeStructure& tree,
                                   const Dataset& train, Rng& rng) {
  std::vector<LeafStats> leaves(tree.num_leaves());
  for (std::size_t i = 0; i < train.size(); ++i) {
    LeafStats& leaf = leaves[tree.Route(train.values(i))];
    if (train.label(i) == Label::kPositive) {
      ++leaf.n_plus;
    } else {
      ++leaf.n_minus;
    }
  }
  FinalizeLeaves(leaves, rng);
  return leaves;
}

}  // namespace rdf
