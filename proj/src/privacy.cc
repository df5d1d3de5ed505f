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
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>

#include "rdf/errors.h"
#include "rdf/forest.h"

namespace rdf {

double LaplaceInverseCdf(double rate, double u) {
  if (u <= 0.5) return std::log(2.0 * u) / rate;
  return -std::log(2.0 * (1.0 - u)) / rate;
}

double LaplaceCdf(double rate, double x) {
  if (x < 0) return 0.5 * std::exp(rate * x);
  return 1.0 - 0.5 * std::exp(-rate * x);
}

double SampleLaplace(double rate, Rng& rng) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw Error(ErrorCode::kBadRate,
                "Laplace rate must be positive, got " + std::to_string(rate));
  }
  return LaplaceInverseCdf(rate, rng.UniformOpen01());
}

void PrivacyParams::Validate() const {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw Error(ErrorCode::kBadEta,
                "eta must be positive, got " + std::to_string(eta));
  }
  if (k < 1) throw Error(ErrorCode::kDomain, "k must be at least 1");
}

void BudgetLedger::Charge(std::string query, double base, std::uint64_t numer,
                          std::uint64_t denom) {
  if (denom == 0) throw Error(ErrorCode::kDomain, "zero denominator");
  entries_.push_back({std::move(query), base, numer, denom});
}

double BudgetLedger::total() const {
  // Sum the fractions of each distinct base exactly, then scale once.
  struct Fraction {
    std::uint64_t num = 0;
    std::uint64_t den = 1;
  };
  std::vector<std::pair<double, Fraction>> groups;
  for (const Entry& e : entries_) {
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const auto& g) { return g.first == e.base; });
    if (it == groups.end()) {
      groups.push_back({e.base, {}});
      it = groups.end() - 1;
    }
    Fraction& f = it->second;
    std::uint64_t l = std::lcm(f.den, e.denom);
    f.num = f.num * (l / f.den) + e.numer * (l / e.denom);
    f.den = l;
    std::uint64_t g = std::gcd(f.num, f.den);
    if (g > 1) {
      f.num /= g;
      f.den /= g;
    }
  }
  double total = 0.0;
  for (const auto& [base, f] : groups) {
    total += f.num == f.den
                 ? base
                 : base * static_cast<double>(f.num) / static_cast<double>(f.den);
  }
  return total;
}

PerturbedLeaf PerturbLeafWithNoise(std::uint64_t n_plus, std::uint64_t n_minus,
                                   double noise_plus, double noise_minus,
                                   Rng& fallback) {
  PerturbedLeaf leaf;
  leaf.n_p_plus = static_cast<double>(n_plus) + noise_plus;
  leaf.n_p_minus = static_cast<double>(n_minus) + noise_minus;
  if (leaf.n_p_plus < 0.0 || leaf.n_p_minus < 0.0 ||
      (leaf.n_p_plus == 0.0 && leaf.n_p_minus == 0.0)) {
    leaf.theta_p = fallback.Uniform01();
    leaf.theta_p_source = ThetaSource::kUniformRandom;
  } else {
    leaf.theta_p = leaf.n_p_plus / (leaf.n_p_plus + leaf.n_p_minus);
    leaf.theta_p_source = ThetaSource::kCounted;
  }
  return leaf;
}

PerturbedLeaf PerturbLeaf(std::uint64_t n_plus, std::uint64_t n_minus,
                          const PrivacyParams& params, Rng& rng) {
  const double rate = params.per_query_rate();
  double noise_plus = SampleLaplace(rate, rng);
  double noise_minus = SampleLaplace(rate, rng);
  return PerturbLeafWithNoise(n_plus, n_minus, noise_plus, noise_minus, rng);
}

void PrivatizeForest(Forest& forest, double eta, std::uint64_t seed,
                     const PrivatizeOptions& options) {
  if (!forest.trained_)
    throw Error(ErrorCode::kUntrained, "privatize needs a trained forest");
  if (forest.mode_ == ForestMode::kPrivate) {
    throw Error(ErrorCode::kDomain,
                "forest is already private; perturbing again would spend the "
                "budget twice");
  }
  PrivacyParams params{eta, forest.k()};
  params.Validate();

  const std::size_t leaves = forest.num_leaves();
  const auto k = static_cast<std::int64_t>(forest.k());
  std::vector<PerturbedLeaf> perturbed(forest.stats_.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t t = 0; t < k; ++t) {
    auto tu = static_cast<std::size_t>(t);
    Rng rng = Substream(seed, StreamTag::kNoise, {tu});
    for (std::size_t j = 0; j < leaves; ++j) {
      const LeafStats& s = forest.stats_[tu * leaves + j];
      perturbed[tu * leaves + j] =
          options.zero_noise
              ? PerturbLeafWithNoise(s.n_plus, s.n_minus, 0.0, 0.0, rng)
              : PerturbLeaf(s.n_plus, s.n_minus, params, rng);
    }
  }

  forest.perturbed_ = std::move(perturbed);
  for (std::size_t i = 0; i < forest.perturbed_.size(); ++i)
    forest.thetas_[i] = forest.perturbed_[i].theta_p;
  forest.stats_.clear();
  forest.stats_.shrink_to_fit();
  forest.mode_ = ForestMode::kPrivate;
  forest.eta_ = eta;
  forest.zero_noise_ = options.zero_noise;
  for (std::size_t t = 0; t < forest.k(); ++t) {
    forest.ledger_.Charge("tree " + std::to_string(t) + " leaf counts", eta, 1,
                          forest.k());
  }
}

namespace {

struct RowKey {
  std::vector<double> values;
  Label label;

  bool operator<(const RowKey& o) const {
    if (values != o.values) return values < o.values;
    return label < o.label;
  }
};

std::map<RowKey, long> RowCounts(const Dataset& ds) {
  std::map<RowKey, long> counts;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    auto v = ds.values(i);
    ++counts[RowKey{{v.begin(), v.end()}, ds.label(i)}];
  }
  return counts;
}

}  // namespace

void CheckAdjacent(const Dataset& a, const Dataset& b) {
  auto ca = RowCounts(a);
  auto cb = RowCounts(b);
  long only_a = 0;
  long only_b = 0;
  for (const auto& [row, n] : ca) {
    auto it = cb.find(row);
    long m = it == cb.end() ? 0 : it->second;
    if (n > m) only_a += n - m;
  }
  for (const auto& [row, n] : cb) {
    auto it = ca.find(row);
    long m = it == ca.end() ? 0 : it->second;
    if (n > m) only_b += n - m;
  }
  bool adjacent = only_a + only_b == 1 || (only_a == 1 && only_b == 1);
  if (!adjacent) {
    throw Error(ErrorCode::kNotAdjacent,
                "datasets differ in " + std::to_string(only_a) + " + " +
                    std::to_string(only_b) + " points");
  }
}

std::uint64_t EvaluateLeafQuery(const LeafQuery& query, const Dataset& ds) {
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (ds.label(i) == query.label &&
        query.tree->Route(ds.values(i)) == query.leaf)
      ++count;
  }
  return count;
}

RatioCheckResult DpRatioCheck(const Dataset& a, const Dataset& b,
                              const LeafQuery& query, double eta,
                              const RatioCheckOptions& options) {
  if (query.tree == nullptr) throw Error(ErrorCode::kDomain, "query has no tree");
  if (!(a.size() == b.size() && a == b)) CheckAdjacent(a, b);
  PrivacyParams params{eta, options.k};
  params.Validate();
  if (!(options.bin_width > 0.0))
    throw Error(ErrorCode::kDomain, "bin width must be positive");

  RatioCheckResult result;
  result.count_a = EvaluateLeafQuery(query, a);
  result.count_b = EvaluateLeafQuery(query, b);
  const double rate = params.per_query_rate();

  auto histogram = [&](std::uint64_t count, std::uint64_t stream) {
    std::unordered_map<long long, std::size_t> h;
    Rng rng = Substream(options.seed, StreamTag::kNoise, {stream});
    for (std::size_t i = 0; i < options.trials; ++i) {
      double x = static_cast<double>(count) + SampleLaplace(rate, rng);
      ++h[static_cast<long long>(std::floor(x / options.bin_width))];
    }
    return h;
  };
  auto ha = histogram(result.count_a, 0);
  auto hb = histogram(result.count_b, 1);

  for (const auto& [bin, na] : ha) {
    auto it = hb.find(bin);
    if (it == hb.end()) continue;
    std::size_t nb = it->second;
    if (na < options.min_bin_count || nb < options.min_bin_count) continue;
    ++result.bins_compared;
    double r = std::abs(std::log(static_cast<double>(na) /
                                 static_cast<double>(nb)));
    result.max_log_ratio = std::max(result.max_log_ratio, r);
  }
  return result;
}

}  // namespace rdf
