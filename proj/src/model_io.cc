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

#include "rdf/model_io.h"

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rdf/errors.h"

namespace rdf {
namespace {

constexpr const char* kMagic = "rdforest-model";
constexpr int kVersion = 1;

std::string Hex(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%a", v);
  return buf;
}

const char* SourceName(ThetaSource s) {
  return s == ThetaSource::kCounted ? "counted" : "uniform";
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next line split on whitespace; `expect` must be its first token.
  std::istringstream Next(const std::string& expect) {
    std::string line;
    do {
      if (!std::getline(in_, line)) Fail("unexpected end of model, wanted '" + expect + "'");
      ++line_no_;
    } while (line.empty());
    std::istringstream ss(line);
    std::string key;
    ss >> key;
    if (key != expect) Fail("expected '" + expect + "', found '" + key + "'");
    return ss;
  }

  [[noreturn]] void Fail(const std::string& msg) const {
    throw Error(ErrorCode::kParse,
                "model line " + std::to_string(line_no_) + ": " + msg);
  }

  double Real(std::istringstream& ss) const {
    std::string tok;
    if (!(ss >> tok)) Fail("missing number");
    char* end = nullptr;
    double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0') Fail("bad number '" + tok + "'");
    return v;
  }

  std::uint64_t Unsigned(std::istringstream& ss) const {
    std::string tok;
    if (!(ss >> tok)) Fail("missing integer");
    char* end = nullptr;
    std::uint64_t v = std::strtoull(tok.c_str(), &end, 10);
    if (end == tok.c_str() || *end != '\0' || tok[0] == '-')
      Fail("bad integer '" + tok + "'");
    return v;
  }

  std::string Word(std::istringstream& ss) const {
    std::string tok;
    if (!(ss >> tok)) Fail("missing field");
    return tok;
  }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

ThetaSource ParseSource(const LineReader& r, const std::string& s) {
  if (s == "counted") return ThetaSource::kCounted;
  if (s == "uniform") return ThetaSource::kUniformRandom;
  r.Fail("unknown theta source '" + s + "'");
}

}  // namespace

void WriteModel(std::ostream& out, const Forest& forest) {
  if (!forest.trained())
    throw Error(ErrorCode::kUntrained, "only trained forests can be saved");
  const AttributeSchema& schema = forest.schema();
  const char* mode = forest.mode() == ForestMode::kPlain ? "plain"
                     : forest.zero_noise()              ? "private-zero-noise"
                                                        : "private";
  char hash[32];
  std::snprintf(hash, sizeof(hash), "%016" PRIx64, schema.Hash());
  out << kMagic << ' ' << kVersion << '\n'
      << "mode " << mode << '\n'
      << "eta " << Hex(forest.eta()) << '\n'
      << "height " << forest.height() << '\n'
      << "trees " << forest.k() << '\n'
      << "schema " << schema.size() << ' ' << hash << '\n';
  for (const Attribute& a : schema.attributes()) {
    out << "attr "
        << (a.kind == AttributeKind::kBinary ? "binary" : "continuous") << ' '
        << Hex(a.min) << ' ' << Hex(a.max) << ' ' << a.name << '\n';
  }
  for (std::size_t t = 0; t < forest.k(); ++t) {
    out << "tree " << t << '\n';
    for (const InnerNode& n : forest.tree(t).nodes())
      out << "node " << n.attribute << ' ' << Hex(n.threshold) << '\n';
    if (forest.mode() == ForestMode::kPlain) {
      for (const LeafStats& l : forest.leaf_stats(t)) {
        out << "leaf " << l.n_plus << ' ' << l.n_minus << ' ' << Hex(l.theta)
            << ' ' << SourceName(l.theta_source) << '\n';
      }
    } else {
      for (const PerturbedLeaf& l : forest.perturbed_leaves(t)) {
        out << "leaf " << Hex(l.theta_p) << ' ' << SourceName(l.theta_p_source)
            << '\n';
      }
    }
  }
  out << "end\n";
}

Forest ReadModel(std::istream& in) {
  LineReader r(in);
  {
    auto ss = r.Next(kMagic);
    if (r.Unsigned(ss) != kVersion) r.Fail("unsupported model version");
  }
  std::string mode;
  {
    auto ss = r.Next("mode");
    mode = r.Word(ss);
    if (mode != "plain" && mode != "private" && mode != "private-zero-noise")
      r.Fail("unknown mode '" + mode + "'");
  }
  double eta = 0.0;
  {
    auto ss = r.Next("eta");
    eta = r.Real(ss);
  }
  int height = 0;
  {
    auto ss = r.Next("height");
    std::uint64_t h = r.Unsigned(ss);
    if (h < 1 || h > static_cast<std::uint64_t>(kMaxHeight)) r.Fail("height out of range");
    height = static_cast<int>(h);
  }
  std::uint64_t k = 0;
  {
    auto ss = r.Next("trees");
    k = r.Unsigned(ss);
    if (k < 1) r.Fail("a forest needs at least one tree");
  }
  std::uint64_t m = 0;
  std::string stored_hash;
  {
    auto ss = r.Next("schema");
    m = r.Unsigned(ss);
    stored_hash = r.Word(ss);
  }
  std::vector<Attribute> attrs;
  for (std::uint64_t j = 0; j < m; ++j) {
    auto ss = r.Next("attr");
    Attribute a;
    std::string kind = r.Word(ss);
    if (kind == "binary") {
      a.kind = AttributeKind::kBinary;
    } else if (kind == "continuous") {
      a.kind = AttributeKind::kContinuous;
    } else {
      r.Fail("unknown attribute kind '" + kind + "'");
    }
    a.min = r.Real(ss);
    a.max = r.Real(ss);
    std::getline(ss >> std::ws, a.name);
    attrs.push_back(std::move(a));
  }
  AttributeSchema schema(std::move(attrs));
  char hash[32];
  std::snprintf(hash, sizeof(hash), "%016" PRIx64, schema.Hash());
  if (stored_hash != hash) {
    throw Error(ErrorCode::kSchemaViolation,
                "model schema hash " + stored_hash + " does not match " + hash);
  }

  const bool plain = mode == "plain";
  const std::size_t inner = (std::size_t{1} << height) - 1;
  const std::size_t leaves = std::size_t{1} << height;
  std::vector<TreeStructure> trees;
  std::vector<std::vector<LeafStats>> stats;
  std::vector<std::vector<PerturbedLeaf>> perturbed;
  for (std::uint64_t t = 0; t < k; ++t) {
    {
      auto ss = r.Next("tree");
      if (r.Unsigned(ss) != t) r.Fail("trees out of order");
    }
    std::vector<InnerNode> nodes(inner);
    for (InnerNode& n : nodes) {
      auto ss = r.Next("node");
      std::uint64_t a = r.Unsigned(ss);
      if (a >= m) r.Fail("node tests an attribute outside the schema");
      n.attribute = static_cast<std::uint32_t>(a);
      n.threshold = r.Real(ss);
    }
    trees.emplace_back(height, std::move(nodes));
    if (plain) {
      std::vector<LeafStats> ls(leaves);
      for (LeafStats& l : ls) {
        auto ss = r.Next("leaf");
        l.n_plus = r.Unsigned(ss);
        l.n_minus = r.Unsigned(ss);
        l.theta = r.Real(ss);
        l.theta_source = ParseSource(r, r.Word(ss));
      }
      stats.push_back(std::move(ls));
    } else {
      std::vector<PerturbedLeaf> ls(leaves);
      for (PerturbedLeaf& l : ls) {
        auto ss = r.Next("leaf");
        l.theta_p = r.Real(ss);
        l.theta_p_source = ParseSource(r, r.Word(ss));
      }
      perturbed.push_back(std::move(ls));
    }
  }
  r.Next("end");

  if (plain) {
    return Forest::RestorePlain(std::move(schema), height, std::move(trees),
                                std::move(stats));
  }
  return Forest::RestorePrivate(std::move(schema), height, std::move(trees),
                                eta, mode == "private-zero-noise",
                                std::move(perturbed));
}

void SaveModel(const std::filesystem::path& path, const Forest& forest) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  WriteModel(out, forest);
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

Forest LoadModel(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return ReadModel(in);
}

}  // namespace rdf
