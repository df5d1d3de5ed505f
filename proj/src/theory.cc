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

#include "rdf/theory.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "rdf/errors.h"
#include "rdf/forest.h"
#include "rdf/privacy.h"

namespace rdf::theory {

TreeSpace::TreeSpace(AttributeSchema schema, int height, std::uint64_t cap)
    : schema_(std::move(schema)), height_(height), size_(1) {
  if (height < 1 || height > kMaxHeight)
    throw Error(ErrorCode::kDomain, "tree height out of range");
  if (schema_.size() == 0) throw Error(ErrorCode::kDomain, "empty schema");
  if (!schema_.all_binary()) {
    throw Error(ErrorCode::kDomain,
                "exhaustive enumeration needs an all-binary schema; continuous "
                "thresholds make the tree space infinite");
  }
  const std::uint64_t m = schema_.size();
  const std::uint64_t inner = (std::uint64_t{1} << height) - 1;
  for (std::uint64_t j = 0; j < inner; ++j) {
    if (size_ > cap / m) {
      throw Error(ErrorCode::kSpaceTooLarge,
                  "tree space has more than " + std::to_string(cap) + " trees");
    }
    size_ *= m;
  }
}

TreeStructure TreeSpace::At(std::uint64_t index) const {
  const std::uint64_t m = schema_.size();
  std::vector<InnerNode> nodes((std::size_t{1} << height_) - 1);
  for (InnerNode& node : nodes) {
    node.attribute = static_cast<std::uint32_t>(index % m);
    node.threshold = 0.5;
    index /= m;
  }
  return TreeStructure(height_, std::move(nodes));
}

double TreeSpaceStats::mean_sigma() const {
  if (per_point.empty()) return 0.0;
  double s = 0.0;
  for (const PointStats& p : per_point) s += p.sigma;
  return s / static_cast<double>(per_point.size());
}

double TreeSpaceStats::mean_weight() const {
  if (per_point.empty()) return 0.0;
  double s = 0.0;
  for (const PointStats& p : per_point) s += p.weight;
  return s / static_cast<double>(per_point.size());
}

namespace {

// Running sums over trees. Goodness is kept as an integer count so the
// equality with the summed tree accuracies is exact.
struct Accumulator {
  std::vector<std::uint64_t> good;
  std::vector<double> weight;
  std::vector<double> accuracies;
  std::vector<std::size_t> leaf_of;
  std::vector<std::uint64_t> pos, neg;

  explicit Accumulator(std::size_t n) : good(n, 0), weight(n, 0.0), leaf_of(n) {}

  void Add(const TreeStructure& tree, const Dataset& ds) {
    pos.assign(tree.num_leaves(), 0);
    neg.assign(tree.num_leaves(), 0);
    for (std::size_t i = 0; i < ds.size(); ++i) {
      leaf_of[i] = tree.Route(ds.values(i));
      if (ds.label(i) == Label::kPositive) {
        ++pos[leaf_of[i]];
      } else {
        ++neg[leaf_of[i]];
      }
    }
    std::uint64_t correct = 0;
    for (std::size_t j = 0; j < pos.size(); ++j)
      correct += pos[j] > neg[j] ? pos[j] : neg[j];
    accuracies.push_back(static_cast<double>(correct) /
                         static_cast<double>(ds.size()));
    for (std::size_t i = 0; i < ds.size(); ++i) {
      const std::size_t l = leaf_of[i];
      const bool leaf_positive = pos[l] > neg[l];
      const bool positive = ds.label(i) == Label::kPositive;
      if (leaf_positive == positive) ++good[i];
      const std::uint64_t same = positive ? pos[l] : neg[l];
      weight[i] += static_cast<double>(same) / static_cast<double>(pos[l] + neg[l]);
    }
  }

  TreeSpaceStats Finish(bool exhaustive) const {
    TreeSpaceStats s;
    s.exhaustive = exhaustive;
    s.tree_count = accuracies.size();
    const auto t = static_cast<double>(s.tree_count);
    double sum = 0.0;
    for (double a : accuracies) sum += a;
    s.e = sum / t;
    if (!exhaustive && s.tree_count > 1) {
      double ss = 0.0;
      for (double a : accuracies) ss += (a - s.e) * (a - s.e);
      s.e_stderr = std::sqrt(ss / (t - 1.0) / t);
    }
    s.per_point.resize(good.size());
    for (std::size_t i = 0; i < good.size(); ++i) {
      s.per_point[i].sigma = static_cast<double>(good[i]) / t;
      s.per_point[i].weight = weight[i] / t;
    }
    return s;
  }
};

}  // namespace

TreeSpaceStats ComputeTreeSpaceStats(const TreeSpace& space, const Dataset& ds) {
  if (ds.empty()) throw Error(ErrorCode::kEmptyInput, "dataset is empty");
  Accumulator acc(ds.size());
  space.ForEach([&](const TreeStructure& tree) { acc.Add(tree, ds); });
  return acc.Finish(true);
}

TreeSpaceStats EstimateTreeSpaceStats(const AttributeSchema& schema, int height,
                                      const Dataset& ds, std::size_t samples,
                                      std::uint64_t seed) {
  if (ds.empty()) throw Error(ErrorCode::kEmptyInput, "dataset is empty");
  if (samples == 0) throw Error(ErrorCode::kDomain, "need at least one sample");
  Accumulator acc(ds.size());
  for (std::size_t s = 0; s < samples; ++s) {
    Rng rng = Substream(seed, StreamTag::kStructure, {s});
    acc.Add(BuildRandomTree(schema, height, rng), ds);
  }
  return acc.Finish(false);
}

double GoodnessFraction(const TreeSpaceStats& stats, double threshold) {
  if (stats.per_point.empty()) return 0.0;
  std::size_t c = 0;
  for (const PointStats& p : stats.per_point) c += p.sigma >= threshold;
  return static_cast<double>(c) / static_cast<double>(stats.per_point.size());
}

double WeightFraction(const TreeSpaceStats& stats, double threshold) {
  if (stats.per_point.empty()) return 0.0;
  std::size_t c = 0;
  for (const PointStats& p : stats.per_point) c += p.weight >= threshold;
  return static_cast<double>(c) / static_cast<double>(stats.per_point.size());
}

IdentityReport CheckTreeSpaceIdentities(std::size_t instances,
                                        std::uint64_t seed, double tolerance) {
  IdentityReport r;
  r.instances = instances;
  r.min_jensen_slack = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < instances; ++i) {
    Rng rng = Substream(seed, StreamTag::kDataset, {i});
    const std::size_t n = 1 + rng.UniformIndex(64);
    const std::size_t m = 1 + rng.UniformIndex(3);
    const int h = 1 + static_cast<int>(rng.UniformIndex(2));
    const double p_plus = rng.Uniform01();
    Dataset ds(AttributeSchema::AllBinary(m));
    std::vector<double> x(m);
    for (std::size_t j = 0; j < n; ++j) {
      for (double& v : x) v = rng.Bernoulli(0.5) ? 1.0 : 0.0;
      ds.Add(x, rng.Bernoulli(p_plus) ? Label::kPositive : Label::kNegative);
    }
    TreeSpaceStats s = ComputeTreeSpaceStats(TreeSpace(ds.schema(), h), ds);
    const double gap = std::abs(s.mean_sigma() - s.e);
    r.max_equality_gap = std::max(r.max_equality_gap, gap);
    if (!(gap < tolerance)) ++r.equality_failures;
    const double slack =
        s.mean_weight() - (s.e * s.e + (1.0 - s.e) * (1.0 - s.e));
    r.min_jensen_slack = std::min(r.min_jensen_slack, slack);
    if (!(slack >= -tolerance)) ++r.jensen_failures;
  }
  return r;
}

namespace bounds {
namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double MajorityError(double epsilon, double delta) {
  double d = 0.5 - delta;
  return d > 0.0 ? epsilon / d : kInf;
}

double ThresholdError(double epsilon, double delta) {
  double d = 0.5 - delta;
  return d > 0.0 ? (2.0 * epsilon - 2.0 * epsilon * epsilon) / d : kInf;
}

double ProbabilisticError(double epsilon, double delta, double c) {
  return 2.0 * epsilon - 2.0 * epsilon * epsilon + delta + c;
}

double MajorityMuLower(double epsilon, double margin) {
  double d = 0.5 - margin;
  return d > 0.0 ? 1.0 - epsilon / d : -kInf;
}

double ThresholdMuLower(double epsilon, double margin) {
  double d = 0.5 - margin;
  return d > 0.0 ? 1.0 - (2.0 * epsilon - 2.0 * epsilon * epsilon) / d : -kInf;
}

double Phi(double delta, int h, double big_k) {
  return delta / (2.0 * (4.0 + delta) * std::ldexp(1.0, h) * big_k);
}

double Lambda(double delta, int h, double big_k) {
  return delta / (24.0 * big_k * std::ldexp(1.0, h));
}

double Gamma(int h) { return 1.0 / (std::ldexp(1.0, h) * 9600.0); }

double P1NonPrivate(double n, double c_exp) { return 1.0 - std::pow(n, -c_exp); }

double P1Probabilistic(double n, double c_exp, double c) {
  return P1NonPrivate(n, c_exp) * (1.0 - std::exp(-2.0 * n * c * c));
}

double P2(double p1, int h, double k, double n, double phi) {
  return p1 - std::ldexp(1.0, h + 3) * k * std::exp(-2.0 * n * phi * phi);
}

double P1Private(double n, double k, double delta, double lambda, double eta) {
  return 1.0 - n * (std::exp(-k * delta * delta / 2.0) + std::exp(-k / 2.0) +
                    k * std::exp(-lambda * n * eta / k));
}

double P1PrivateProbabilistic(double n, double k, double delta, double lambda,
                              double eta, double c) {
  return P1Private(n, k, delta, lambda, eta) *
         (1.0 - std::exp(-2.0 * n * c * c));
}

double PrivateThresholdAtOptimum(double epsilon) {
  return 1.0 / 8.0 + 4.5 * epsilon - 5.0 * epsilon * epsilon;
}

double PrivateProbabilisticAtOptimum(double epsilon) {
  return 0.2 + 1.9 * epsilon - 2.0 * epsilon * epsilon;
}

double OptimumObjective(double k, double n, double eta, int h) {
  return std::exp(-k / 200.0) +
         2.0 * k * std::exp(-Gamma(h) * std::sqrt(n) * eta / k);
}

double POptimumThreshold(double n, double k_opt, double eta, int h) {
  return 1.0 - n * (OptimumObjective(k_opt, n, eta, h) + std::exp(-n / 2.0));
}

// The trailing factor multiplies the whole bracket, as the statement reads.
double POptimumProbabilistic(double n, double k_opt, double eta, int h) {
  return 1.0 - n * (OptimumObjective(k_opt, n, eta, h) + std::exp(-n / 2.0)) *
                   (1.0 - std::exp(-n / 200.0));
}

}  // namespace bounds

OptimalKResult OptimalK(double n, double eta, int h,
                        const OptimalKOptions& options) {
  std::size_t k_max = options.k_max;
  if (k_max == 0) {
    k_max = static_cast<std::size_t>(std::ceil(10.0 * std::log(std::max(n, 1.0)))) +
            1000;
  }
  OptimalKResult r;
  r.f_opt = bounds::OptimumObjective(1.0, n, eta, h);
  double prev = r.f_opt;
  std::size_t rising = 0;
  std::size_t k = 1;
  bool settled = false;
  while (true) {
    r.scanned = k;
    if (k >= k_max && rising >= options.patience) {
      settled = true;
      break;
    }
    if (k >= options.hard_limit) break;
    ++k;
    double f = bounds::OptimumObjective(static_cast<double>(k), n, eta, h);
    rising = f > prev ? rising + 1 : 0;
    prev = f;
    if (f < r.f_opt) {
      r.f_opt = f;
      r.k_opt = k;
    }
  }
  r.at_boundary = !settled;
  return r;
}

BoundValue ErrorBound(double raw) {
  BoundValue b;
  b.raw = raw;
  b.vacuous = !(raw < 1.0);
  b.value = std::isnan(raw) ? 1.0 : std::clamp(raw, 0.0, 1.0);
  return b;
}

BoundValue ProbabilityBound(double raw) {
  BoundValue b;
  b.raw = raw;
  b.vacuous = !(raw > 0.0);
  b.value = std::isnan(raw) ? 0.0 : std::clamp(raw, 0.0, 1.0);
  return b;
}

BoundReport ComputeBoundReport(const BoundInputs& in) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::kDomain, what);
  };
  require(in.epsilon > 0.0 && in.epsilon <= 0.5, "epsilon must lie in (0, 1/2]");
  require(in.delta > 0.0 && in.delta < 0.5, "delta must lie in (0, 1/2)");
  require(in.big_k > 0.0 && std::isfinite(in.big_k), "K must be positive");
  require(in.c_exp > 0.0 && std::isfinite(in.c_exp), "C must be positive");
  require(in.c > 0.0 && in.c < 1.0, "c must lie in (0, 1)");
  require(in.eta > 0.0 && std::isfinite(in.eta), "eta must be positive");
  require(in.h >= 1 && in.h <= kMaxHeight, "h out of range");
  require(in.k >= 1, "k must be at least 1");
  require(in.n >= 1.0 && std::isfinite(in.n), "n must be at least 1");

  using namespace bounds;
  BoundReport r;
  r.inputs = in;
  const double eps = in.epsilon;
  const double d = in.delta;
  const double inv_k = 1.0 / in.big_k;
  const auto k = static_cast<double>(in.k);
  r.phi = Phi(d, in.h, in.big_k);
  r.lambda = Lambda(d, in.h, in.big_k);
  r.gamma = Gamma(in.h);

  r.err1_majority = ErrorBound(MajorityError(eps, d));
  r.err1_threshold = ErrorBound(ThresholdError(eps, d));
  r.err1_prob = ErrorBound(ProbabilisticError(eps, d, in.c));
  r.err2_majority = ErrorBound(MajorityError(eps + inv_k, d));
  r.err2_threshold = ErrorBound(ThresholdError(eps + inv_k, d));
  r.err2_prob = ErrorBound(ProbabilisticError(eps + inv_k, d, in.c));

  double p1 = P1NonPrivate(in.n, in.c_exp);
  double p1_prob = P1Probabilistic(in.n, in.c_exp, in.c);
  r.p1 = ProbabilityBound(p1);
  r.p1_prob = ProbabilityBound(p1_prob);
  r.p2 = ProbabilityBound(P2(p1, in.h, k, in.n, r.phi));
  r.p2_prob = ProbabilityBound(P2(p1_prob, in.h, k, in.n, r.phi));

  r.mu_majority = ProbabilityBound(MajorityMuLower(eps, d));
  r.mu_majority_gen = ProbabilityBound(MajorityMuLower(eps, d + inv_k));
  r.mu_threshold = ProbabilityBound(ThresholdMuLower(eps, d));
  r.mu_threshold_gen = ProbabilityBound(ThresholdMuLower(eps, d + inv_k));

  double dp_p1 = P1Private(in.n, k, d, r.lambda, in.eta);
  double dp_p1_prob = P1PrivateProbabilistic(in.n, k, d, r.lambda, in.eta, in.c);
  r.dp_p1 = ProbabilityBound(dp_p1);
  r.dp_p1_prob = ProbabilityBound(dp_p1_prob);
  r.dp_p2 = ProbabilityBound(P2(dp_p1, in.h, k, in.n, r.phi));
  r.dp_mu_majority = ProbabilityBound(MajorityMuLower(eps, d + inv_k));
  r.dp_mu_majority_gen = ProbabilityBound(MajorityMuLower(eps, d + 2.0 * inv_k));
  r.dp_mu_threshold = ProbabilityBound(ThresholdMuLower(eps, d + inv_k));
  r.dp_mu_threshold_gen =
      ProbabilityBound(ThresholdMuLower(eps, d + 2.0 * inv_k));
  r.dp_err1_prob = ErrorBound(ProbabilisticError(eps + inv_k, d, in.c));
  r.dp_err2_prob = ErrorBound(ProbabilisticError(eps + 2.0 * inv_k, d, in.c));

  OptimalKResult opt = OptimalK(in.n, in.eta, in.h);
  r.k_opt = opt.k_opt;
  r.f_k_opt = opt.f_opt;
  r.k_opt_at_boundary = opt.at_boundary;
  const auto ko = static_cast<double>(opt.k_opt);
  r.dp_err_threshold_bound = ErrorBound(PrivateThresholdAtOptimum(eps));
  r.dp_err_prob_bound = ErrorBound(PrivateProbabilisticAtOptimum(eps));
  r.dp_p_threshold_opt = ProbabilityBound(POptimumThreshold(in.n, ko, in.eta, in.h));
  r.dp_p_prob_opt = ProbabilityBound(POptimumProbabilistic(in.n, ko, in.eta, in.h));
  return r;
}

Dataset GenerateToyBinary(const ToyDataConfig& config, Rng& rng) {
  if (config.m == 0) throw Error(ErrorCode::kDomain, "need at least one attribute");
  Dataset ds(AttributeSchema::AllBinary(config.m));
  ds.Reserve(config.n);
  std::vector<double> x(config.m);
  for (std::size_t i = 0; i < config.n; ++i) {
    for (double& v : x) v = rng.Bernoulli(0.5) ? 1.0 : 0.0;
    bool positive = x[0] == 1.0;
    if (rng.Bernoulli(config.label_noise)) positive = !positive;
    ds.Add(x, positive ? Label::kPositive : Label::kNegative);
  }
  return ds;
}

namespace {

struct CheckSpec {
  const char* name;
  const char* claim;
};

// Order fixes the report layout.
constexpr CheckSpec kChecks[] = {
    {"mu/majority/train", "err1 <= 1 - mu(sigma >= 1/2 + delta)"},
    {"mu/threshold/train", "err1 <= 1 - mu(w >= 1/2 + delta)"},
    {"mu/majority/test", "err2 <= 1 - mu(sigma >= 1/2 + delta + 1/K)"},
    {"mu/threshold/test", "err2 <= 1 - mu(w >= 1/2 + delta + 1/K)"},
    {"eps/majority/train", "err1 <= eps / (1/2 - delta)"},
    {"eps/threshold/train", "err1 <= (2eps - 2eps^2) / (1/2 - delta)"},
    {"eps/majority/test", "err2 <= (eps + 1/K) / (1/2 - delta)"},
    {"eps/threshold/test", "err2 <= (2(eps+1/K) - 2(eps+1/K)^2) / (1/2 - delta)"},
    {"eps/probabilistic/train", "err1 <= 2eps - 2eps^2 + delta + c"},
    {"eps/probabilistic/test", "err2 <= 2(eps+1/K) - 2(eps+1/K)^2 + delta + c"},
    {"dp-mu/majority/train", "err1 <= 1 - mu(sigma >= 1/2 + delta + 1/K)"},
    {"dp-mu/threshold/train", "err1 <= 1 - mu(w >= 1/2 + delta + 1/K)"},
    {"dp-eps/probabilistic/train",
     "err1 <= 2(eps+1/K) - 2(eps+1/K)^2 + delta + c"},
    {"dp-kopt/threshold/train", "err1 <= 1/8 + 9/2 eps - 5 eps^2"},
    {"dp-kopt/probabilistic/train", "err1 <= 1/5 + 19/10 eps - 2 eps^2"},
};
constexpr std::size_t kNumChecks = std::size(kChecks);

struct Outcome {
  double bound = 0.0;
  double measured = 0.0;
  double failure = 0.0;  // stated 1 - p, clamped
  std::size_t k = 0;
};

double Failure(double p) { return std::clamp(1.0 - p, 0.0, 1.0); }

Forest TrainedForest(const Dataset& train, int h, std::size_t k,
                     std::uint64_t seed) {
  Forest f = BuildForest(train.schema(), h, k, seed);
  Train(f, train, seed);
  return f;
}

}  // namespace

ValidationReport ValidateBoundsMonteCarlo(const DatasetGenerator& generator,
                                          const ValidationConfig& cfg) {
  if (cfg.trials == 0) throw Error(ErrorCode::kDomain, "need at least one trial");
  if (!(cfg.delta > 0.0 && cfg.delta < 0.5))
    throw Error(ErrorCode::kBadDelta, "delta must lie in (0, 1/2)");
  if (cfg.dp_k == 0) throw Error(ErrorCode::kDomain, "dp_k must be at least 1");

  std::vector<std::array<Outcome, kNumChecks>> results(cfg.trials);
  std::vector<std::string> errors(cfg.trials);
  const auto trials = static_cast<std::int64_t>(cfg.trials);

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t ti = 0; ti < trials; ++ti) {
    const auto t = static_cast<std::uint64_t>(ti);
    try {
      const std::uint64_t trial_seed = DeriveSeed(cfg.seed, StreamTag::kTrial, {t});
      Rng train_rng = Substream(trial_seed, StreamTag::kDataset, {0});
      Rng test_rng = Substream(trial_seed, StreamTag::kDataset, {1});
      Dataset train = generator(train_rng);
      Dataset test = generator(test_rng);
      const auto n = static_cast<double>(train.size());
      const double inv_k = 1.0 / cfg.big_k;

      TreeSpace space(train.schema(), cfg.h);
      TreeSpaceStats s_train = ComputeTreeSpaceStats(space, train);
      TreeSpaceStats s_test = ComputeTreeSpaceStats(space, test);
      const double eps = s_train.epsilon();
      const double eps_test = s_test.epsilon();

      const std::size_t k_emp = RecommendedK(n, cfg.c_exp, cfg.delta);
      const std::size_t k_gen = RecommendedK(n, cfg.c_exp, cfg.delta / 2.0);
      const OptimalKResult opt = OptimalK(n, cfg.eta, cfg.h);
      const std::size_t k_opt = opt.k_opt;

      const double phi = bounds::Phi(cfg.delta, cfg.h, cfg.big_k);
      const double lambda = bounds::Lambda(cfg.delta, cfg.h, cfg.big_k);
      const double p1 = bounds::P1NonPrivate(n, cfg.c_exp);
      const double p1_prob = bounds::P1Probabilistic(n, cfg.c_exp, cfg.c);
      const double p2 = bounds::P2(p1, cfg.h, static_cast<double>(k_gen), n, phi);
      const double p2_prob =
          bounds::P2(p1_prob, cfg.h, static_cast<double>(k_emp), n, phi);
      const auto dk = static_cast<double>(cfg.dp_k);
      const double dp_p1 = bounds::P1Private(n, dk, cfg.delta, lambda, cfg.eta);
      const double dp_p1_prob = bounds::P1PrivateProbabilistic(
          n, dk, cfg.delta, lambda, cfg.eta, cfg.c);
      const auto ko = static_cast<double>(k_opt);
      const double p_opt_thr = bounds::POptimumThreshold(n, ko, cfg.eta, cfg.h);
      const double p_opt_prob =
          bounds::POptimumProbabilistic(n, ko, cfg.eta, cfg.h);

      Forest emp = TrainedForest(train, cfg.h, k_emp, DeriveSeed(trial_seed, {1}));
      Forest gen = TrainedForest(train, cfg.h, k_gen, DeriveSeed(trial_seed, {2}));
      Forest dp = TrainedForest(train, cfg.h, cfg.dp_k, DeriveSeed(trial_seed, {3}));
      PrivatizeForest(dp, cfg.eta, DeriveSeed(trial_seed, {4}));
      Forest dpo = TrainedForest(train, cfg.h, k_opt, DeriveSeed(trial_seed, {5}));
      PrivatizeForest(dpo, cfg.eta, DeriveSeed(trial_seed, {6}));
      const std::uint64_t vote_seed = DeriveSeed(trial_seed, {7});

      auto err = [&](const Forest& f, const Dataset& ds, VotingRule rule) {
        return CountErrors(f, ds, rule, vote_seed).rate();
      };
      const double half = 0.5 + cfg.delta;
      auto& o = results[t];
      o[0] = {1.0 - GoodnessFraction(s_train, half),
              err(emp, train, VotingRule::kMajority), Failure(p1), k_emp};
      o[1] = {1.0 - WeightFraction(s_train, half),
              err(emp, train, VotingRule::kThreshold), Failure(p1), k_emp};
      o[2] = {1.0 - GoodnessFraction(s_test, half + inv_k),
              err(gen, test, VotingRule::kMajority), Failure(p2), k_gen};
      o[3] = {1.0 - WeightFraction(s_test, half + inv_k),
              err(gen, test, VotingRule::kThreshold), Failure(p2), k_gen};
      o[4] = {bounds::MajorityError(eps, cfg.delta), o[0].measured, Failure(p1),
              k_emp};
      o[5] = {bounds::ThresholdError(eps, cfg.delta), o[1].measured,
              Failure(p1), k_emp};
      o[6] = {bounds::MajorityError(eps_test + inv_k, cfg.delta), o[2].measured,
              Failure(p2), k_gen};
      o[7] = {bounds::ThresholdError(eps_test + inv_k, cfg.delta), o[3].measured,
              Failure(p2), k_gen};
      o[8] = {bounds::ProbabilisticError(eps, cfg.delta, cfg.c),
              err(emp, train, VotingRule::kProbabilistic), Failure(p1_prob),
              k_emp};
      o[9] = {bounds::ProbabilisticError(eps_test + inv_k, cfg.delta, cfg.c),
              err(emp, test, VotingRule::kProbabilistic), Failure(p2_prob), k_emp};
      o[10] = {1.0 - GoodnessFraction(s_train, half + inv_k),
               err(dp, train, VotingRule::kMajority), Failure(dp_p1), cfg.dp_k};
      o[11] = {1.0 - WeightFraction(s_train, half + inv_k),
               err(dp, train, VotingRule::kThreshold), Failure(dp_p1), cfg.dp_k};
      o[12] = {bounds::ProbabilisticError(eps + inv_k, cfg.delta, cfg.c),
               err(dp, train, VotingRule::kProbabilistic), Failure(dp_p1_prob),
               cfg.dp_k};
      o[13] = {bounds::PrivateThresholdAtOptimum(eps),
               err(dpo, train, VotingRule::kThreshold), Failure(p_opt_thr), k_opt};
      o[14] = {bounds::PrivateProbabilisticAtOptimum(eps),
               err(dpo, train, VotingRule::kProbabilistic), Failure(p_opt_prob),
               k_opt};
    } catch (const std::exception& e) {
      errors[t] = e.what();
    }
  }
  for (const std::string& e : errors) {
    if (!e.empty()) throw Error(ErrorCode::kDomain, "validation trial failed: " + e);
  }

  ValidationReport report;
  const auto trials_d = static_cast<double>(cfg.trials);
  for (std::size_t c = 0; c < kNumChecks; ++c) {
    BoundCheck check;
    check.name = kChecks[c].name;
    check.claim = kChecks[c].claim;
    check.trials = cfg.trials;
    check.k = results[0][c].k;
    double failure = 0.0;
    for (const auto& trial : results) {
      const Outcome& o = trial[c];
      // A tiny slack absorbs rounding when the bound is met with equality.
      if (o.measured > o.bound + 1e-12) ++check.violations;
      failure += o.failure;
      check.mean_bound += o.bound;
      check.mean_measured += o.measured;
    }
    check.allowed_failure = failure / trials_d;
    check.mean_bound /= trials_d;
    check.mean_measured /= trials_d;
    const double q = check.allowed_failure;
    check.band = 3.0 * std::sqrt(q * (1.0 - q) / trials_d);
    report.checks.push_back(std::move(check));
  }
  return report;
}

}  // namespace rdf::theory
