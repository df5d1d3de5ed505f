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

#ifndef RDF_KERNELS_H_
#define RDF_KERNELS_H_

// Data-parallel inner loops. Each kernel has a serial reference version that
// the tests compare against and the benchmark times against; both produce
// bit-identical output.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rdf/dataset.h"
#include "rdf/tree.h"

namespace rdf {

class Forest;

namespace kernels {

// Leaf counters for every tree, tree-major: tree t, leaf j lives at
// t * 2^h + j. `out` must be zeroed and sized k * 2^h.
//
// The serial version makes one fused pass, routing each point through all
// trees before moving to the next; the parallel one gives each thread whole
// trees, so no counter is shared.
void AccumulateLeafCountsSerial(std::span<const TreeStructure> trees,
                                const Dataset& ds, std::span<LeafStats> out);
void AccumulateLeafCountsParallel(std::span<const TreeStructure> trees,
                                  const Dataset& ds, std::span<LeafStats> out);

// Per-point forest aggregates: number of trees voting + and the mean of the
// leaf fractions (summed in tree order, then divided by k).
struct PointScores {
  std::vector<std::uint32_t> votes;
  std::vector<double> mean_theta;
};

PointScores ScorePointsSerial(const Forest& forest, const Dataset& ds);
PointScores ScorePointsParallel(const Forest& forest, const Dataset& ds);

}  // namespace kernels
}  // namespace rdf

#endif  // RDF_KERNELS_H_
