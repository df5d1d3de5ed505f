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

#ifndef RDF_THEORY_H_
#define RDF_THEORY_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rdf/dataset.h"
#include "rdf/rng.h"
#include "rdf/tree.h"

namespace rdf::theory {

// Every complete tree of height h over an all-binary schema, i.e. every
// assignment of the m attributes to the 2^h - 1 inner nodes (thresholds are
// fixed at 0.5). There are m^(2^h - 1) of them; index i is decoded as a
// base-m number whose digit j is the attribute of inner node j.
class TreeSpace {
 public:
  // Throws DomainError for a non-binary schema and SpaceTooLarge when the
  // space exceeds `cap` trees.
  TreeSpace(AttributeSchema schema, int height, std::uint64_t cap = 1'000'000);

  std::uint64_t size() const { return size_; }
  int height() const { return height_; }
  const AttributeSchema& schema() const { return schema_; }

  TreeStructure At(std::uint64_t index) const;

  template <typename Fn>
  void ForEach(Fn&& fn) const {
    for (std::uint64_t i = 0; i < size_; ++i) fn(At(i));
  }

 private:
  AttributeSchema schema_;
  int height_;
  std::uint64_t size_;
};

struct PointStats {
  // Fraction of trees whose leaf holding the point has the point's label as
  // its majority label.
  double sigma = 0.0;
  // Mean over trees of the fraction of same-label points in the point's
  // leaf (the point itself included).
  double weight = 0.0;
};

// Average tree accuracy e and per-point goodness / weight over a tree space.
// A leaf's majority label is + iff it holds strictly more + than - points,
// the same tie rule the forest's per-tree vote uses.
struct TreeSpaceStats {
  double e = 0.0;
  // Standard error of e; zero when the space was enumerated exhaustively.
  double e_stderr = 0.0;
  std::vector<PointStats> per_point;
  std::uint64_t tree_count = 0;
  bool exhaustive = true;

  double epsilon() const { return 1.0 - e; }
  double mean_sigma() const;
  double mean_weight() const;
};

TreeSpaceStats ComputeTreeSpaceStats(const TreeSpace& space, const Dataset& ds);

// Same quantities estimated from `samples` random trees; works for
// continuous schemas, whose tree space cannot be enumerated.
TreeSpaceStats EstimateTreeSpaceStats(const AttributeSchema& schema, int height,
                                      const Dataset& ds, std::size_t samples,
                                      std::uint64_t seed);

// Fraction of points with goodness (resp. weight) at least `threshold`.
double GoodnessFraction(const TreeSpaceStats& stats, double threshold);
double WeightFraction(const TreeSpaceStats& stats, double threshold);

// Checks the two tree-space identities on random binary instances (n in
// 1..64, m in 1..3, h in 1..2, random label rates): the mean goodness equals
// e, and the mean weight is at least e^2 + (1-e)^2.
struct IdentityReport {
  std::size_t instances = 0;
  std::size_t equality_failures = 0;
  double max_equality_gap = 0.0;
  std::size_t jensen_failures = 0;
  // Smallest mean_weight - (e^2 + (1-e)^2) seen.
  double min_jensen_slack = 0.0;
};

IdentityReport CheckTreeSpaceIdentities(std::size_t instances,
                                        std::uint64_t seed,
                                        double tolerance = 1e-9);

// Closed-form bounds. These take any epsilon in [0, 1/2]; BoundReport
// enforces the stricter input domains.
namespace bounds {

double MajorityError(double epsilon, double delta);
double ThresholdError(double epsilon, double delta);
double ProbabilisticError(double epsilon, double delta, double c);
double MajorityMuLower(double epsilon, double margin);
double ThresholdMuLower(double epsilon, double margin);

double Phi(double delta, int h, double big_k);
double Lambda(double delta, int h, double big_k);
double Gamma(int h);

double P1NonPrivate(double n, double c_exp);
double P1Probabilistic(double n, double c_exp, double c);
double P2(double p1, int h, double k, double n, double phi);
double P1Private(double n, double k, double delta, double lambda, double eta);
double P1PrivateProbabilistic(double n, double k, double delta, double lambda,
                              double eta, double c);

double PrivateThresholdAtOptimum(double epsilon);
double PrivateProbabilisticAtOptimum(double epsilon);
double OptimumObjective(double k, double n, double eta, int h);
double POptimumThreshold(double n, double k_opt, double eta, int h);
double POptimumProbabilistic(double n, double k_opt, double eta, int h);

}  // namespace bounds

struct OptimalKOptions {
  // First scan limit; 0 means ceil(10 ln n) + 1000.
  std::size_t k_max = 0;
  // The scan goes past k_max until f has increased this many steps in a row.
  std::size_t patience = 100;
  std::size_t hard_limit = 10'000'000;
};

struct OptimalKResult {
  std::size_t k_opt = 1;
  double f_opt = 0.0;
  std::size_t scanned = 0;
  // Minimum sits on the last scanned k, so the true optimum may be larger.
  bool at_boundary = false;
};

// Smallest k minimizing f(k) = exp(-k/200) + 2k exp(-gamma sqrt(n) eta / k).
OptimalKResult OptimalK(double n, double eta, int h,
                        const OptimalKOptions& options = {});

struct BoundInputs {
  double epsilon = 0.1;
  double delta = 0.1;
  double big_k = 10.0;
  double c_exp = 1.0;  // C
  double c = 0.05;
  int h = 1;
  std::size_t k = 1;
  double n = 100.0;
  double eta = 1.0;
};

struct BoundValue {
  double raw = 0.0;
  double value = 0.0;  // raw clamped to [0, 1]
  bool vacuous = false;
};

BoundValue ErrorBound(double raw);
BoundValue ProbabilityBound(double raw);

struct BoundReport {
  BoundInputs inputs;
  // Non-private, empirical (1) and generalization (2) error.
  BoundValue err1_majority, err1_threshold, err1_prob;
  BoundValue err2_majority, err2_threshold, err2_prob;
  BoundValue p1, p1_prob, p2, p2_prob;
  // Lower bounds on the fraction of good points, margins delta and
  // delta + 1/K.
  BoundValue mu_majority, mu_majority_gen, mu_threshold, mu_threshold_gen;
  // Private setting at the given k.
  BoundValue dp_p1, dp_p1_prob, dp_p2;
  BoundValue dp_mu_majority, dp_mu_majority_gen;
  BoundValue dp_mu_threshold, dp_mu_threshold_gen;
  BoundValue dp_err1_prob, dp_err2_prob;
  // Private setting at k_opt.
  std::size_t k_opt = 1;
  double f_k_opt = 0.0;
  bool k_opt_at_boundary = false;
  BoundValue dp_err_threshold_bound, dp_err_prob_bound;
  BoundValue dp_p_threshold_opt, dp_p_prob_opt;
  double phi = 0.0, lambda = 0.0, gamma = 0.0;
};

// Evaluates every closed-form bound. Throws DomainError unless
// epsilon in (0, 1/2], delta in (0, 1/2), K > 0, C > 0, c in (0, 1), eta > 0,
// h >= 1, k >= 1 and n >= 1.
BoundReport ComputeBoundReport(const BoundInputs& inputs);

// Binary toy data: m attributes, each 1 with probability 1/2; the label is
// + iff attribute 0 is set, flipped with probability `label_noise`.
struct ToyDataConfig {
  std::size_t n = 32;
  std::size_t m = 3;
  double label_noise = 0.1;
};

Dataset GenerateToyBinary(const ToyDataConfig& config, Rng& rng);

using DatasetGenerator = std::function<Dataset(Rng&)>;

struct ValidationConfig {
  int h = 2;
  double delta = 0.25;
  double big_k = 10.0;
  double c_exp = 1.0;
  double c = 0.1;
  double eta = 1.0;
  // Forest size for the private bounds stated for an arbitrary k.
  std::size_t dp_k = 5;
  std::size_t trials = 200;
  std::uint64_t seed = 0;
};

struct BoundCheck {
  std::string name;
  std::string claim;
  std::size_t trials = 0;
  std::size_t violations = 0;
  // Mean over trials of the stated failure probability 1 - p, clamped to
  // [0, 1], and the 3-sigma binomial band around it.
  double allowed_failure = 0.0;
  double band = 0.0;
  double mean_bound = 0.0;
  double mean_measured = 0.0;
  std::size_t k = 0;

  double violation_rate() const {
    return trials == 0 ? 0.0
                       : static_cast<double>(violations) /
                             static_cast<double>(trials);
  }
  bool held() const { return violation_rate() <= allowed_failure + band; }
};

struct ValidationReport {
  std::vector<BoundCheck> checks;
};

// For each trial: draws a training and a test set from `generator`,
// enumerates the tree space for exact e, sigma and w, builds forests of the
// size each bound prescribes, and records whether each stated error bound
// held. Trials run in parallel on independent substreams.
ValidationReport ValidateBoundsMonteCarlo(const DatasetGenerator& generator,
                                          const ValidationConfig& config);

}  // namespace rdf::theory

#endif  // RDF_THEORY_H_
