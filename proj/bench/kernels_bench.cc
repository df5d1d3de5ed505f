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

// Serial reference kernels against their OpenMP versions.

#include <vector>

#include <benchmark/benchmark.h>

#include "rdf/forest.h"
#include "rdf/kernels.h"

namespace {

rdf::Dataset MakeData(std::size_t n) {
  rdf::AttributeSchema schema({{"a", rdf::AttributeKind::kContinuous, 0.0, 1.0},
                               {"b", rdf::AttributeKind::kContinuous, 0.0, 1.0},
                               {"c", rdf::AttributeKind::kBinary, 0.0, 1.0},
                               {"d", rdf::AttributeKind::kContinuous, -5.0, 5.0}});
  rdf::Dataset ds(schema);
  rdf::Rng rng(1);
  std::vector<double> x(4);
  for (std::size_t i = 0; i < n; ++i) {
    x = {rng.Uniform01(), rng.Uniform01(), rng.Bernoulli(0.5) ? 1.0 : 0.0,
         rng.Uniform(-5.0, 5.0)};
    ds.Add(x, x[0] + x[1] > 1.0 ? rdf::Label::kPositive : rdf::Label::kNegative);
  }
  return ds;
}

template <bool kParallel>
void BM_LeafCounts(benchmark::State& state) {
  rdf::Dataset ds = MakeData(static_cast<std::size_t>(state.range(0)));
  rdf::Forest forest = rdf::BuildForest(ds.schema(), 10, 21, 3);
  std::vector<rdf::LeafStats> out(forest.k() * forest.num_leaves());
  for (auto _ : state) {
    std::fill(out.begin(), out.end(), rdf::LeafStats{});
    if constexpr (kParallel) {
      rdf::kernels::AccumulateLeafCountsParallel(forest.trees(), ds, out);
    } else {
      rdf::kernels::AccumulateLeafCountsSerial(forest.trees(), ds, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool kParallel>
void BM_ScorePoints(benchmark::State& state) {
  rdf::Dataset ds = MakeData(static_cast<std::size_t>(state.range(0)));
  rdf::Forest forest = rdf::BuildForest(ds.schema(), 10, 21, 3);
  rdf::Train(forest, ds, 3);
  for (auto _ : state) {
    rdf::kernels::PointScores s = kParallel
                                      ? rdf::kernels::ScorePointsParallel(forest, ds)
                                      : rdf::kernels::ScorePointsSerial(forest, ds);
    benchmark::DoNotOptimize(s.mean_theta.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

BENCHMARK(BM_LeafCounts<false>)->Name("LeafCounts/serial")->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_LeafCounts<true>)->Name("LeafCounts/parallel")->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_ScorePoints<false>)->Name("ScorePoints/serial")->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_ScorePoints<true>)->Name("ScorePoints/parallel")->Arg(1 << 12)->Arg(1 << 16);

}  // namespace

BENCHMARK_MAIN();
