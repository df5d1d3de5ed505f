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

#ifndef RDF_TREE_H_
#define RDF_TREE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rdf/dataset.h"
#include "rdf/rng.h"

namespace rdf {

// Leaves are allocated eagerly, so heights are capped well below the point
// where 2^h leaves per tree stops fitting in memory.
inline constexpr int kMaxHeight = 24;

struct InnerNode {
  std::uint32_t attribute = 0;
  double threshold = 0.5;

  bool operator==(const InnerNode&) const = default;
};

// Complete binary tree of a fixed height. Inner nodes are stored breadth
// first: the children of node i are 2i+1 (left) and 2i+2 (right). Leaves are
// numbered 0 .. 2^h-1 from left to right. The structure never depends on
// training data.
class TreeStructure {
 public:
  TreeStructure() = default;
  // Throws DomainError unless nodes.size() == 2^height - 1.
  TreeStructure(int height, std::vector<InnerNode> nodes);

  int height() const { return height_; }
  std::size_t num_leaves() const { return std::size_t{1} << height_; }
  std::size_t num_inner() const { return nodes_.size(); }
  std::span<const InnerNode> nodes() const { return nodes_; }
  const InnerNode& node(std::size_t i) const { return nodes_[i]; }

  // Descends from the root, going left iff value <= threshold.
  std::size_t Route(std::span<const double> values) const {
    std::size_t i = 0;
    for (int level = 0; level < height_; ++level) {
      const InnerNode& n = nodes_[i];
      i = 2 * i + (values[n.attribute] <= n.threshold ? 1 : 2);
    }
    return i - nodes_.size();
  }

  bool operator==(const TreeStructure&) const = default;

 private:
  int height_ = 0;
  std::vector<InnerNode> nodes_;
};

// Draws each inner node's attribute uniformly (with replacement) from the
// schema and, for continuous attributes, a threshold uniform on the public
// range. Binary attributes use the threshold 0.5.
TreeStructure BuildRandomTree(const AttributeSchema& schema, int height,
                              Rng& rng);

enum class ThetaSource : std::uint8_t { kCounted, kUniformRandom };

struct LeafStats {
  std::uint64_t n_plus = 0;
  std::uint64_t n_minus = 0;
  double theta = 0.0;
  ThetaSource theta_source = ThetaSource::kUniformRandom;

  std::uint64_t total() const { return n_plus + n_minus; }
  bool operator==(const LeafStats&) const = default;
};

// Sets theta from the counts, drawing a uniform value for empty leaves in
// leaf order from `rng`.
void FinalizeLeaves(std::span<LeafStats> leaves, Rng& rng);

// One pass over `train`; empty leaves get their uniform theta here.
std::vector<LeafStats> TrainCounts(const TreeStructure& tree,
                                   const Dataset& train, Rng& rng);

}  // namespace rdf

#endif  // RDF_TREE_H_
