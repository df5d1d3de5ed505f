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

// rdforest: train, evaluate and sweep random decision forests from the
// command line. Exit status 0 on success, 2 on configuration errors and 3 on
// data errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rdf/errors.h"
#include "rdf/forest.h"
#include "rdf/harness.h"
#include "rdf/manifest.h"
#include "rdf/model_io.h"
#include "rdf/privacy.h"
#include "rdf/theory.h"

namespace {

using namespace rdf;

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

// "1..15", "1..21:2", "3,5,9" or any comma-separated mix of these.
template <typename T>
std::vector<T> ParseGrid(const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string part;
  auto number = [&](const std::string& s) -> long long {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size())
      throw Error(ErrorCode::kConfig, "bad grid value '" + s + "' in '" + text + "'");
    return v;
  };
  while (std::getline(ss, part, ',')) {
    if (part.empty()) continue;
    std::size_t dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(static_cast<T>(number(part)));
      continue;
    }
    std::string rest = part.substr(dots + 2);
    long long step = 1;
    std::size_t colon = rest.find(':');
    if (colon != std::string::npos) {
      step = number(rest.substr(colon + 1));
      rest = rest.substr(0, colon);
    }
    long long lo = number(part.substr(0, dots));
    long long hi = number(rest);
    if (step <= 0 || hi < lo)
      throw Error(ErrorCode::kConfig, "bad grid range '" + part + "'");
    for (long long v = lo; v <= hi; v += step) out.push_back(static_cast<T>(v));
  }
  if (out.empty()) throw Error(ErrorCode::kConfig, "empty grid '" + text + "'");
  for (T v : out) {
    if (v < 1) throw Error(ErrorCode::kConfig, "grid values must be positive");
  }
  return out;
}

std::vector<double> ParseReals(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) continue;
    char* end = nullptr;
    double v = std::strtod(part.c_str(), &end);
    if (end == part.c_str() || *end != '\0' || !(v > 0.0))
      throw Error(ErrorCode::kConfig, "bad positive number '" + part + "'");
    out.push_back(v);
  }
  if (out.empty()) throw Error(ErrorCode::kConfig, "empty list '" + text + "'");
  return out;
}

// Output goes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw Error(ErrorCode::kConfig, "cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void Finish() {
    stream().flush();
    if (!stream()) throw Error(ErrorCode::kIo, "write failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

struct Common {
  std::string dataset;
  std::string method = "n-dpRFMV";
  std::string h = "1..15";
  std::string k = "1..21:2";
  double eta = 0.0;
  bool eta_auto = false;
  std::size_t runs = 10;
  std::uint64_t seed = 42;
  std::string out;
  bool zero_noise = false;
  bool record_time = false;
};

void AddDataset(CLI::App* cmd, Common& c) {
  cmd->add_option("--dataset", c.dataset, "Dataset manifest (JSON)")->required();
}

void AddExperiment(CLI::App* cmd, Common& c) {
  cmd->add_option("--method", c.method,
                  "n-dpRFMV, n-dpRFTA, n-dpRFPA, dpRFMV, dpRFTA or dpRFPA");
  cmd->add_option("--h", c.h, "Heights, e.g. 1..15 or 3,6,9");
  cmd->add_option("--k", c.k, "Forest sizes, e.g. 1..21:2");
  auto* eta = cmd->add_option("--eta", c.eta, "Privacy budget for dp methods");
  auto* eta_auto = cmd->add_flag("--eta-auto", c.eta_auto, "eta = 1000 / n_train (default)");
  eta->excludes(eta_auto);
  cmd->add_option("--runs", c.runs, "Repetitions with fresh splits");
  cmd->add_option("--seed", c.seed, "Master seed");
  cmd->add_option("--out", c.out, "Output file (stdout when omitted)");
  cmd->add_flag("--zero-noise", c.zero_noise,
                "Debug: privatize without noise (NOT private)");
}

ExperimentConfig MakeConfig(const Common& c, const DatasetManifest& manifest) {
  ExperimentConfig cfg;
  cfg.dataset_name = manifest.name;
  cfg.method = ParseMethod(c.method);
  cfg.h_grid = ParseGrid<int>(c.h);
  cfg.k_grid = ParseGrid<std::size_t>(c.k);
  cfg.eta_auto = c.eta <= 0.0;
  cfg.eta = c.eta;
  cfg.runs = c.runs;
  cfg.seed = c.seed;
  cfg.zero_noise = c.zero_noise;
  cfg.record_time = c.record_time;
  cfg.split = manifest.split;
  cfg.Validate();
  return cfg;
}

int RunTrain(const Common& c, const std::string& model_path) {
  DatasetManifest manifest = LoadManifest(c.dataset);
  Dataset ds = LoadDataset(manifest);
  ExperimentConfig cfg = MakeConfig(c, manifest);
  if (cfg.h_grid.size() != 1 || cfg.k_grid.size() != 1)
    throw Error(ErrorCode::kConfig, "train takes a single --h and --k");
  Partition part = Split(ds, RunSplitSeed(cfg.seed, 0), cfg.split);
  const int h = cfg.h_grid[0];
  const std::size_t k = cfg.k_grid[0];
  Forest forest = BuildForest(ds.schema(), h, k, cfg.seed);
  Train(forest, part.train, cfg.seed);
  if (cfg.method.dp) {
    double eta = cfg.eta_auto ? 1000.0 / static_cast<double>(part.train.size())
                              : cfg.eta;
    PrivatizeOptions opts;
    opts.zero_noise = cfg.zero_noise;
    PrivatizeForest(forest, eta, DeriveSeed(cfg.seed, StreamTag::kNoise, {}), opts);
    if (cfg.zero_noise)
      std::cerr << "warning: --zero-noise model is NOT differentially private\n";
  }
  SaveModel(model_path, forest);
  ErrorCount val = CountErrors(forest, part.validation, cfg.method.rule, cfg.seed);
  ErrorCount test = CountErrors(forest, part.test, cfg.method.rule, cfg.seed);
  std::printf("%s h=%d k=%zu n_train=%zu validation_error=%.2f%% test_error=%.2f%%",
              MethodName(cfg.method).c_str(), h, k, part.train.size(),
              100.0 * val.rate(), 100.0 * test.rate());
  if (forest.mode() == ForestMode::kPrivate)
    std::printf(" eta=%.6g budget_spent=%.6g", forest.eta(), forest.ledger().total());
  std::printf("\nmodel written to %s\n", model_path.c_str());
  return 0;
}

int RunPredict(const Common& c, const std::string& model_path, bool eval) {
  Forest forest = LoadModel(model_path);
  DatasetManifest manifest = LoadManifest(c.dataset);
  Dataset ds = LoadDataset(manifest);
  if (!(ds.schema() == forest.schema()))
    throw Error(ErrorCode::kSchemaViolation, "dataset schema differs from the model's");
  VotingRule rule = ParseMethod(c.method).rule;
  if (eval) {
    ErrorCount e = CountErrors(forest, ds, rule, c.seed);
    Output out(c.out);
    out.stream() << "# rdforest eval v1\nrule,errors,total,error\n"
                 << VotingRuleName(rule) << ',' << e.errors << ',' << e.total
                 << ',' << 100.0 * e.rate() << '\n';
    out.Finish();
    return 0;
  }
  Output out(c.out);
  out.stream() << "# rdforest predictions v1\nindex,label,score\n";
  char buf[64];
  for (std::size_t i = 0; i < ds.size(); ++i) {
    Rng rng = Substream(c.seed, StreamTag::kVote, {i});
    Prediction p = Classify(forest, ds.values(i), rule, rng);
    std::snprintf(buf, sizeof(buf), "%.6f", p.score);
    out.stream() << i << ',' << (p.label == Label::kPositive ? 1 : 0) << ','
                 << buf << '\n';
  }
  out.Finish();
  return 0;
}

int RunSweep(const Common& c) {
  DatasetManifest manifest = LoadManifest(c.dataset);
  Dataset ds = LoadDataset(manifest);
  ExperimentConfig cfg = MakeConfig(c, manifest);
  std::vector<ResultRow> rows = RunGrid(ds, cfg);
  Output out(c.out);
  WriteRowsCsv(out.stream(), rows, cfg.record_time);
  out.Finish();
  BestCell best = SelectBest(rows);
  std::fprintf(stderr, "best: h=%d k=%zu validation=%.2f%% test=%.2f%% +- %.2f\n",
               best.h, best.k, best.validation_error, best.test_error, best.ci95);
  return 0;
}

int RunEtaSweep(const Common& c, const std::string& etas, std::size_t k_max) {
  DatasetManifest manifest = LoadManifest(c.dataset);
  Dataset ds = LoadDataset(manifest);
  ExperimentConfig cfg = MakeConfig(c, manifest);
  if (!cfg.method.dp)
    throw Error(ErrorCode::kConfig, "eta-sweep needs a dp method");
  auto rows = EtaSweep(ds, cfg, ParseReals(etas), k_max);
  Output out(c.out);
  WriteEtaSweepCsv(out.stream(), rows);
  out.Finish();
  return 0;
}

int RunTable(const Common& c) {
  DatasetManifest manifest = LoadManifest(c.dataset);
  Dataset ds = LoadDataset(manifest);
  Common copy = c;
  copy.method = "n-dpRFMV";
  ExperimentConfig cfg = MakeConfig(copy, manifest);
  auto rows = ReproduceTable(ds, cfg);
  Output out(c.out);
  WriteTableCsv(out.stream(), rows);
  out.Finish();
  return 0;
}

int RunVerifyTheory(std::uint64_t seed, std::size_t trials,
                    std::size_t instances, const std::string& out_path) {
  struct Row {
    std::string check, inputs;
    double bound, measured;
    bool held;
  };
  std::vector<Row> rows;
  char buf[256];

  theory::IdentityReport id = theory::CheckTreeSpaceIdentities(instances, seed);
  std::snprintf(buf, sizeof(buf), "instances=%zu n<=64 m<=3 h<=2", id.instances);
  rows.push_back({"mean-goodness-equals-accuracy", buf, 1e-9, id.max_equality_gap,
                  id.equality_failures == 0});
  rows.push_back({"mean-weight-at-least-e2-plus-1me2", buf, -1e-9,
                  id.min_jensen_slack, id.jensen_failures == 0});

  theory::ValidationConfig vc;
  vc.trials = trials;
  vc.seed = seed;
  theory::ToyDataConfig toy;
  auto report = theory::ValidateBoundsMonteCarlo(
      [&](Rng& rng) { return theory::GenerateToyBinary(toy, rng); }, vc);
  for (const theory::BoundCheck& ch : report.checks) {
    std::snprintf(buf, sizeof(buf),
                  "trials=%zu n=%zu m=%zu h=%d k=%zu delta=%g K=%g C=%g c=%g eta=%g",
                  ch.trials, toy.n, toy.m, vc.h, ch.k, vc.delta, vc.big_k,
                  vc.c_exp, vc.c, vc.eta);
    rows.push_back({ch.name + " [" + ch.claim + "] violation rate", buf,
                    ch.allowed_failure + ch.band, ch.violation_rate(), ch.held()});
  }

  theory::BoundInputs bi;
  bi.epsilon = 0.1;
  bi.delta = 0.1;
  theory::BoundReport br = theory::ComputeBoundReport(bi);
  rows.push_back({"majority err1 closed form", "eps=0.1 delta=0.1",
                  br.err1_majority.raw, br.err1_majority.value,
                  !br.err1_majority.vacuous});
  rows.push_back({"private threshold err1 at k_opt", "eps=0.1",
                  br.dp_err_threshold_bound.raw, br.dp_err_threshold_bound.value,
                  !br.dp_err_threshold_bound.vacuous});

  bool all = true;
  std::printf("%-72s %-12s %-12s %s\n", "check", "bound", "measured", "status");
  for (const Row& r : rows) {
    std::printf("%-72s %-12.6g %-12.6g %s\n", r.check.c_str(), r.bound,
                r.measured, r.held ? "held" : "violated");
    all = all && r.held;
  }
  if (!out_path.empty()) {
    Output out(out_path);
    out.stream() << "# rdforest verify-theory v1\ncheck,inputs,bound,measured,status\n";
    for (const Row& r : rows) {
      std::snprintf(buf, sizeof(buf), "%.10g,%.10g", r.bound, r.measured);
      out.stream() << '"' << r.check << "\",\"" << r.inputs << "\"," << buf << ','
                   << (r.held ? "held" : "violated") << '\n';
    }
    out.Finish();
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random decision forests with optional differential privacy"};
  app.require_subcommand(1);
  // -h would clash with the --h height option.
  app.set_help_flag("--help", "Print this help message and exit");
  Common c;
  std::string model;
  std::string etas = "0.01,0.1,1,10,100";
  std::size_t k_max = 101;
  std::size_t trials = 200;
  std::size_t instances = 100;

  auto* train = app.add_subcommand("train", "Train one forest and save it");
  AddDataset(train, c);
  AddExperiment(train, c);
  train->add_option("--model", model, "Model output path")->required();

  auto* predict = app.add_subcommand("predict", "Classify a dataset with a saved model");
  AddDataset(predict, c);
  predict->add_option("--model", model, "Model path")->required();
  predict->add_option("--method", c.method, "Method whose voting rule to use");
  predict->add_option("--seed", c.seed, "Seed for probabilistic votes");
  predict->add_option("--out", c.out, "Output CSV");

  auto* eval = app.add_subcommand("eval", "Error of a saved model on a dataset");
  AddDataset(eval, c);
  eval->add_option("--model", model, "Model path")->required();
  eval->add_option("--method", c.method, "Method whose voting rule to use");
  eval->add_option("--seed", c.seed, "Seed for probabilistic votes");
  eval->add_option("--out", c.out, "Output CSV");

  auto* sweep = app.add_subcommand("sweep", "Grid over h and k");
  AddDataset(sweep, c);
  AddExperiment(sweep, c);
  sweep->add_flag("--record-time", c.record_time,
                  "Add a wall_time column (output no longer reproducible)");

  auto* eta_sweep = app.add_subcommand("eta-sweep", "Test error against eta");
  AddDataset(eta_sweep, c);
  AddExperiment(eta_sweep, c);
  eta_sweep->add_option("--eta-grid", etas, "Comma-separated eta values");
  eta_sweep->add_option("--k-max", k_max, "k is chosen from 1..k-max");

  auto* verify = app.add_subcommand("verify-theory", "Check the accuracy bounds numerically");
  verify->add_option("--seed", c.seed, "Master seed");
  verify->add_option("--trials", trials, "Monte Carlo trials per bound");
  verify->add_option("--instances", instances, "Random datasets for the identities");
  verify->add_option("--out", c.out, "CSV report path");

  auto* table = app.add_subcommand("reproduce-table1",
                                   "Best-validation error of the four main methods");
  AddDataset(table, c);
  table->add_option("--h", c.h, "Heights");
  table->add_option("--k", c.k, "Forest sizes");
  table->add_option("--eta", c.eta, "Fixed eta (default 1000 / n_train)");
  table->add_option("--runs", c.runs, "Repetitions");
  table->add_option("--seed", c.seed, "Master seed");
  table->add_option("--out", c.out, "Output CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*train) return RunTrain(c, model);
    if (*predict) return RunPredict(c, model, false);
    if (*eval) return RunPredict(c, model, true);
    if (*sweep) return RunSweep(c);
    if (*eta_sweep) return RunEtaSweep(c, etas, k_max);
    if (*verify) return RunVerifyTheory(c.seed, trials, instances, c.out);
    if (*table) return RunTable(c);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return IsDataError(e.code()) ? kExitData : kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}
