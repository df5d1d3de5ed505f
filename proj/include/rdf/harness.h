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

#ifndef RDF_HARNESS_H_
#define RDF_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "rdf/dataset.h"
#include "rdf/forest.h"

namespace rdf {

struct Method {
  bool dp = false;
  VotingRule rule = VotingRule::kMajority;

  bool operator==(const Method&) const = default;
};

// n-dpRFMV, n-dpRFTA, n-dpRFPA and their private counterparts dpRF*.
std::string MethodName(Method m);
// Accepts the names above, case-insensitively. Throws ConfigError.
Method ParseMethod(std::string_view name);

struct ExperimentConfig {
  std::string dataset_name;
  Method method;
  std::vector<int> h_grid;
  std::vector<std::size_t> k_grid;
  // When set, eta = 1000 / n_train for every run.
  bool eta_auto = true;
  double eta = 1.0;
  std::size_t runs = 10;
  std::uint64_t seed = 42;
  // Private methods skip the noise (debug only; the result is not private).
  bool zero_noise = false;
  // Adds a wall_time column. Off by default so result files are
  // byte-reproducible.
  bool record_time = false;
  SplitFractions split;

  // h in 1..15 and k in {1, 3, ..., 21}.
  static ExperimentConfig Defaults();
  // Throws ConfigError on empty grids, runs == 0, bad heights or k == 0.
  void Validate() const;
};

struct ResultRow {
  std::string dataset;
  std::string method;
  int h = 0;
  std::size_t k = 0;
  double eta = 0.0;  // 0 for plain methods
  std::size_t run = 0;
  std::size_t validation_errors = 0;
  std::size_t validation_total = 0;
  std::size_t test_errors = 0;
  std::size_t test_total = 0;
  // Percentages.
  double validation_error = 0.0;
  double test_error = 0.0;
  // Half-width of the 95% interval of the test error pooled over all runs
  // of this (h, k, eta) cell.
  double ci95 = 0.0;
  double wall_time = 0.0;
  // Ledger total of the run's forest (0 for plain methods).
  double budget_spent = 0.0;
};

// 1.96 * sqrt(p (1 - p) / N) * 100 with p = errors / N. Throws DomainError
// when N == 0.
double ConfidenceInterval(std::size_t errors, std::size_t total);

// Split seed of run r; shared by every grid cell of that run.
std::uint64_t RunSplitSeed(std::uint64_t master_seed, std::size_t run);

// Every (h, k) cell for every run. Rows come out ordered by h, then k, then
// run, regardless of how the cells were scheduled.
std::vector<ResultRow> RunGrid(const Dataset& ds, const ExperimentConfig& config);

struct BestCell {
  int h = 0;
  std::size_t k = 0;
  double eta = 0.0;
  double validation_error = 0.0;  // percent, pooled over runs
  double test_error = 0.0;        // percent, pooled over runs
  std::size_t test_errors = 0;
  std::size_t test_total = 0;
  double ci95 = 0.0;
};

// Cell with the smallest pooled validation error; ties go to the smaller k,
// then the smaller h. Throws EmptyInput on no rows.
BestCell SelectBest(const std::vector<ResultRow>& rows);

struct EtaSweepRow {
  std::string dataset;
  std::string method;
  double eta = 0.0;
  int h = 0;
  BestCell best;
};

// For each eta and each h of the config, runs k = 1..k_max and keeps the k
// with the best validation error.
std::vector<EtaSweepRow> EtaSweep(const Dataset& ds,
                                  const ExperimentConfig& config,
                                  const std::vector<double>& etas,
                                  std::size_t k_max = 101);

struct TableRow {
  std::string dataset;
  std::size_t n = 0;
  std::size_t m = 0;
  std::string method;
  BestCell best;
};

// The four majority / threshold methods over the config's grid.
std::vector<TableRow> ReproduceTable(const Dataset& ds,
                                     const ExperimentConfig& config);

// CSV writers. The first line is a '#' comment naming the format version.
void WriteRowsCsv(std::ostream& out, const std::vector<ResultRow>& rows,
                  bool record_time);
void WriteEtaSweepCsv(std::ostream& out, const std::vector<EtaSweepRow>& rows);
void WriteTableCsv(std::ostream& out, const std::vector<TableRow>& rows);

}  // namespace rdf

#endif  // RDF_HARNESS_H_
