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

#include "rdf/harness.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <tuple>

#include "rdf/errors.h"
#include "rdf/privacy.h"

namespace rdf {

std::string MethodName(Method m) {
  std::string name = m.dp ? "dpRF" : "n-dpRF";
  switch (m.rule) {
    case VotingRule::kMajority: return name + "MV";
    case VotingRule::kThreshold: return name + "TA";
    case VotingRule::kProbabilistic: return name + "PA";
  }
  return name;
}

Method ParseMethod(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (bool dp : {false, true}) {
    for (VotingRule rule : {VotingRule::kMajority, VotingRule::kThreshold,
                            VotingRule::kProbabilistic}) {
      std::string candidate = MethodName({dp, rule});
      std::transform(candidate.begin(), candidate.end(), candidate.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      if (candidate == lower) return {dp, rule};
    }
  }
  throw Error(ErrorCode::kConfig, "unknown method '" + std::string(name) + "'");
}

ExperimentConfig ExperimentConfig::Defaults() {
  ExperimentConfig c;
  for (int h = 1; h <= 15; ++h) c.h_grid.push_back(h);
  for (std::size_t k = 1; k <= 21; k += 2) c.k_grid.push_back(k);
  return c;
}

void ExperimentConfig::Validate() const {
  if (h_grid.empty()) throw Error(ErrorCode::kConfig, "h grid is empty");
  if (k_grid.empty()) throw Error(ErrorCode::kConfig, "k grid is empty");
  if (runs == 0) throw Error(ErrorCode::kConfig, "runs must be at least 1");
  for (int h : h_grid) {
    if (h < 1 || h > kMaxHeight)
      throw Error(ErrorCode::kConfig, "h out of range: " + std::to_string(h));
  }
  for (std::size_t k : k_grid) {
    if (k == 0) throw Error(ErrorCode::kConfig, "k must be at least 1");
  }
  if (method.dp && !eta_auto && !(eta > 0.0 && std::isfinite(eta)))
    throw Error(ErrorCode::kConfig, "eta must be positive");
}

double ConfidenceInterval(std::size_t errors, std::size_t total) {
  if (total == 0) throw Error(ErrorCode::kDomain, "confidence interval of no points");
  const double p = static_cast<double>(errors) / static_cast<double>(total);
  return 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(total)) * 100.0;
}

std::uint64_t RunSplitSeed(std::uint64_t master_seed, std::size_t run) {
  return DeriveSeed(master_seed, StreamTag::kSplit, {run});
}

namespace {

double Percent(std::size_t errors, std::size_t total) {
  return total == 0 ? 0.0
                    : 100.0 * static_cast<double>(errors) /
                          static_cast<double>(total);
}

struct Cell {
  std::size_t run;
  int h;
  std::size_t k;
};

ResultRow EvaluateCell(const Partition& part, const ExperimentConfig& cfg,
                       const Cell& cell) {
  auto start = std::chrono::steady_clock::now();
  const std::uint64_t forest_seed =
      DeriveSeed(cfg.seed, StreamTag::kRun,
                 {cell.run, static_cast<std::uint64_t>(cell.h), cell.k});
  Forest forest = BuildForest(part.train.schema(), cell.h, cell.k, forest_seed);
  Train(forest, part.train, forest_seed);

  ResultRow row;
  row.dataset = cfg.dataset_name;
  row.method = MethodName(cfg.method);
  row.h = cell.h;
  row.k = cell.k;
  row.run = cell.run;
  if (cfg.method.dp) {
    row.eta = cfg.eta_auto ? 1000.0 / static_cast<double>(part.train.size())
                           : cfg.eta;
    PrivatizeOptions opts;
    opts.zero_noise = cfg.zero_noise;
    PrivatizeForest(forest, row.eta,
                    DeriveSeed(forest_seed, StreamTag::kNoise, {}), opts);
    row.budget_spent = forest.ledger().total();
  }
  const std::uint64_t vote_seed = DeriveSeed(forest_seed, StreamTag::kVote, {});
  ErrorCount val = CountErrors(forest, part.validation, cfg.method.rule, vote_seed);
  ErrorCount test = CountErrors(forest, part.test, cfg.method.rule,
                                DeriveSeed(vote_seed, {1}));
  row.validation_errors = val.errors;
  row.validation_total = val.total;
  row.test_errors = test.errors;
  row.test_total = test.total;
  row.validation_error = Percent(val.errors, val.total);
  row.test_error = Percent(test.errors, test.total);
  row.wall_time = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  return row;
}

using CellKey = std::tuple<int, std::size_t, double>;

}  // namespace

std::vector<ResultRow> RunGrid(const Dataset& ds, const ExperimentConfig& cfg) {
  cfg.Validate();
  std::vector<Partition> parts;
  parts.reserve(cfg.runs);
  for (std::size_t r = 0; r < cfg.runs; ++r)
    parts.push_back(Split(ds, RunSplitSeed(cfg.seed, r), cfg.split));

  std::vector<Cell> cells;
  for (int h : cfg.h_grid)
    for (std::size_t k : cfg.k_grid)
      for (std::size_t r = 0; r < cfg.runs; ++r) cells.push_back({r, h, k});

  std::vector<ResultRow> rows(cells.size());
  std::vector<std::string> errors(cells.size());
  const auto count = static_cast<std::int64_t>(cells.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i) {
    auto u = static_cast<std::size_t>(i);
    try {
      rows[u] = EvaluateCell(parts[cells[u].run], cfg, cells[u]);
    } catch (const std::exception& e) {
      errors[u] = e.what();
    }
  }
  for (const std::string& e : errors)
    if (!e.empty()) throw Error(ErrorCode::kDomain, e);

  std::map<CellKey, std::pair<std::size_t, std::size_t>> pooled;
  for (const ResultRow& r : rows) {
    auto& p = pooled[{r.h, r.k, r.eta}];
    p.first += r.test_errors;
    p.second += r.test_total;
  }
  for (ResultRow& r : rows) {
    const auto& p = pooled[{r.h, r.k, r.eta}];
    r.ci95 = p.second == 0 ? 0.0 : ConfidenceInterval(p.first, p.second);
  }
  return rows;
}

BestCell SelectBest(const std::vector<ResultRow>& rows) {
  if (rows.empty()) throw Error(ErrorCode::kEmptyInput, "no result rows");
  struct Pool {
    std::size_t val_err = 0, val_total = 0, test_err = 0, test_total = 0;
  };
  std::map<CellKey, Pool> pools;
  for (const ResultRow& r : rows) {
    Pool& p = pools[{r.h, r.k, r.eta}];
    p.val_err += r.validation_errors;
    p.val_total += r.validation_total;
    p.test_err += r.test_errors;
    p.test_total += r.test_total;
  }
  const std::pair<const CellKey, Pool>* best = nullptr;
  for (const auto& entry : pools) {
    if (best == nullptr) {
      best = &entry;
      continue;
    }
    // Compare err_a / tot_a against err_b / tot_b without rounding.
    const Pool& a = entry.second;
    const Pool& b = best->second;
    const unsigned long long lhs =
        static_cast<unsigned long long>(a.val_err) * b.val_total;
    const unsigned long long rhs =
        static_cast<unsigned long long>(b.val_err) * a.val_total;
    const auto [ha, ka, ea] = entry.first;
    const auto [hb, kb, eb] = best->first;
    bool better = lhs < rhs;
    if (lhs == rhs) better = std::tie(ka, ha, ea) < std::tie(kb, hb, eb);
    if (better) best = &entry;
  }
  BestCell out;
  std::tie(out.h, out.k, out.eta) = best->first;
  const Pool& p = best->second;
  out.validation_error = Percent(p.val_err, p.val_total);
  out.test_error = Percent(p.test_err, p.test_total);
  out.test_errors = p.test_err;
  out.test_total = p.test_total;
  out.ci95 = p.test_total == 0 ? 0.0 : ConfidenceInterval(p.test_err, p.test_total);
  return out;
}

std::vector<EtaSweepRow> EtaSweep(const Dataset& ds,
                                  const ExperimentConfig& config,
                                  const std::vector<double>& etas,
                                  std::size_t k_max) {
  if (etas.empty()) throw Error(ErrorCode::kConfig, "eta grid is empty");
  if (k_max == 0) throw Error(ErrorCode::kConfig, "k_max must be at least 1");
  std::vector<EtaSweepRow> out;
  for (double eta : etas) {
    for (int h : config.h_grid) {
      ExperimentConfig cfg = config;
      cfg.eta_auto = false;
      cfg.eta = eta;
      cfg.h_grid = {h};
      cfg.k_grid.clear();
      for (std::size_t k = 1; k <= k_max; ++k) cfg.k_grid.push_back(k);
      EtaSweepRow row;
      row.dataset = config.dataset_name;
      row.method = MethodName(config.method);
      row.eta = eta;
      row.h = h;
      row.best = SelectBest(RunGrid(ds, cfg));
      out.push_back(row);
    }
  }
  return out;
}

std::vector<TableRow> ReproduceTable(const Dataset& ds,
                                     const ExperimentConfig& config) {
  const Method methods[] = {{false, VotingRule::kMajority},
                            {false, VotingRule::kThreshold},
                            {true, VotingRule::kMajority},
                            {true, VotingRule::kThreshold}};
  std::vector<TableRow> out;
  for (const Method& m : methods) {
    ExperimentConfig cfg = config;
    cfg.method = m;
    TableRow row;
    row.dataset = config.dataset_name;
    row.n = ds.size();
    row.m = ds.num_attributes();
    row.method = MethodName(m);
    row.best = SelectBest(RunGrid(ds, cfg));
    out.push_back(row);
  }
  return out;
}

namespace {

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string General(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

void WriteRowsCsv(std::ostream& out, const std::vector<ResultRow>& rows,
                  bool record_time) {
  out << "# rdforest grid v1\n"
      << "dataset,method,h,k,eta,run,validation_error,test_error,ci95,"
         "test_errors,test_total";
  if (record_time) out << ",wall_time";
  out << '\n';
  for (const ResultRow& r : rows) {
    out << r.dataset << ',' << r.method << ',' << r.h << ',' << r.k << ','
        << General(r.eta) << ',' << r.run << ',' << Fixed(r.validation_error, 4)
        << ',' << Fixed(r.test_error, 4) << ',' << Fixed(r.ci95, 4) << ','
        << r.test_errors << ',' << r.test_total;
    if (record_time) out << ',' << Fixed(r.wall_time, 6);
    out << '\n';
  }
}

void WriteEtaSweepCsv(std::ostream& out, const std::vector<EtaSweepRow>& rows) {
  out << "# rdforest eta-sweep v1\n"
      << "dataset,method,eta,h,k,validation_error,test_error,ci95\n";
  for (const EtaSweepRow& r : rows) {
    out << r.dataset << ',' << r.method << ',' << General(r.eta) << ',' << r.h
        << ',' << r.best.k << ',' << Fixed(r.best.validation_error, 4) << ','
        << Fixed(r.best.test_error, 4) << ',' << Fixed(r.best.ci95, 4) << '\n';
  }
}

void WriteTableCsv(std::ostream& out, const std::vector<TableRow>& rows) {
  out << "# rdforest table v1\n"
      << "dataset,n,m,method,test_error,ci95,k,h,eta,validation_error\n";
  for (const TableRow& r : rows) {
    out << r.dataset << ',' << r.n << ',' << r.m << ',' << r.method << ','
        << Fixed(r.best.test_error, 2) << ',' << Fixed(r.best.ci95, 2) << ','
        << r.best.k << ',' << r.best.h << ',' << General(r.best.eta) << ','
        << Fixed(r.best.validation_error, 4) << '\n';
  }
}

}  // namespace rdf
