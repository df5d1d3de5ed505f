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

#ifndef RDF_RNG_H_
#define RDF_RNG_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>

namespace rdf {

// Tags that keep the substreams of one master seed apart. Values are part of
// the reproducibility contract: changing them changes every result file.
enum class StreamTag : std::uint64_t {
  kSplit = 1,
  kStructure = 2,
  kEmptyLeaf = 3,
  kNoise = 4,
  kVote = 5,
  kRun = 6,
  kTrial = 7,
  kDataset = 8,
};

// splitmix64 finalizer.
std::uint64_t Mix64(std::uint64_t x);

// Derives a child seed from a parent seed and a path of indices. Pure
// function; independent of thread count and call order.
std::uint64_t DeriveSeed(std::uint64_t seed,
                         std::initializer_list<std::uint64_t> path);

inline std::uint64_t DeriveSeed(std::uint64_t seed, StreamTag tag,
                                std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = DeriveSeed(seed, {static_cast<std::uint64_t>(tag)});
  return DeriveSeed(s, path);
}

// Deterministic random stream. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; the conversions to reals and indices are
// done here rather than through <random> distributions so that results are
// identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double Uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1); never returns 0.
  double UniformOpen01() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform01(); }

  // Unbiased integer in [0, n); n must be positive.
  std::uint64_t UniformIndex(std::uint64_t n);

  bool Bernoulli(double p) { return Uniform01() < p; }

  template <typename T>
  void Shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(UniformIndex(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

inline Rng Substream(std::uint64_t seed, StreamTag tag,
                     std::initializer_list<std::uint64_t> path) {
  return Rng(DeriveSeed(seed, tag, path));
}

}  // namespace rdf

#endif  // RDF_RNG_H_
