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

#include "rdf/dataset.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "rdf/errors.h"
#include "rdf/rng.h"

namespace rdf {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r' || s.front() == '\n')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r' || s.back() == '\n')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> SplitFields(std::string_view line, char delim) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(delim, start);
    if (pos == std::string_view::npos) {
      out.push_back(Trim(line.substr(start)));
      break;
    }
    out.push_back(Trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> SplitWhitespace(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    std::size_t j = i;
    while (j < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool ParseReal(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

std::string Where(std::size_t line, std::size_t column) {
  return "row " + std::to_string(line) + ", column " + std::to_string(column);
}

Label MapLabel(std::string_view token, const std::vector<std::string>& pos,
               const std::vector<std::string>& neg, const std::string& where) {
  if (std::find(pos.begin(), pos.end(), token) != pos.end())
    return Label::kPositive;
  if (std::find(neg.begin(), neg.end(), token) != neg.end())
    return Label::kNegative;
  throw Error(ErrorCode::kUnknownLabel,
              "label '" + std::string(token) + "' at " + where +
                  " is not in the declared mapping");
}

void CheckValue(const Attribute& a, double v, const std::string& where) {
  bool ok = a.kind == AttributeKind::kBinary ? (v == 0.0 || v == 1.0)
                                              : (v >= a.min && v <= a.max);
  if (!ok) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "value " << v << " for attribute '" << a.name << "' at " << where
        << " is outside [" << a.min << ", " << a.max << "]";
    throw Error(ErrorCode::kSchemaViolation, msg.str());
  }
}

}  // namespace

AttributeSchema::AttributeSchema(std::vector<Attribute> attributes)
    : attributes_(std::move(attributes)) {
  if (attributes_.empty())
    throw Error(ErrorCode::kSchemaViolation, "schema has no attributes");
  for (const Attribute& a : attributes_) {
    if (!(a.min <= a.max) || !std::isfinite(a.min) || !std::isfinite(a.max)) {
      throw Error(ErrorCode::kSchemaViolation,
                  "attribute '" + a.name + "' has an invalid range");
    }
    if (a.kind == AttributeKind::kBinary && (a.min != 0.0 || a.max != 1.0)) {
      throw Error(ErrorCode::kSchemaViolation,
                  "binary attribute '" + a.name + "' must span [0, 1]");
    }
  }
}

AttributeSchema AttributeSchema::AllBinary(std::size_t m) {
  std::vector<Attribute> attrs;
  attrs.reserve(m);
  for (std::size_t i = 0; i < m; ++i)
    attrs.push_back({"x" + std::to_string(i), AttributeKind::kBinary, 0, 1});
  return AttributeSchema(std::move(attrs));
}

bool AttributeSchema::all_binary() const {
  return std::all_of(attributes_.begin(), attributes_.end(), [](auto& a) {
    return a.kind == AttributeKind::kBinary;
  });
}

std::uint64_t AttributeSchema::Hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= p[i];
      h *= 0x100000001b3ULL;
    }
  };
  for (const Attribute& a : attributes_) {
    feed(a.name.data(), a.name.size());
    unsigned char sep = 0;
    feed(&sep, 1);
    auto kind = static_cast<unsigned char>(a.kind);
    feed(&kind, 1);
    auto lo = std::bit_cast<std::uint64_t>(a.min);
    auto hi = std::bit_cast<std::uint64_t>(a.max);
    feed(&lo, sizeof lo);
    feed(&hi, sizeof hi);
  }
  return h;
}

bool AttributeSchema::operator==(const AttributeSchema& other) const {
  if (attributes_.size() != other.attributes_.size()) return false;
  for (std::size_t i = 0; i < attributes_.size(); ++i) {
    const Attribute& a = attributes_[i];
    const Attribute& b = other.attributes_[i];
    if (a.name != b.name || a.kind != b.kind || a.min != b.min ||
        a.max != b.max)
      return false;
  }
  return true;
}

Dataset::Dataset(AttributeSchema schema) : schema_(std::move(schema)) {}

void Dataset::Add(std::span<const double> values, Label label) {
  if (values.size() != schema_.size()) {
    throw Error(ErrorCode::kSchemaViolation,
                "point has " + std::to_string(values.size()) +
                    " values, schema has " + std::to_string(schema_.size()));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    CheckValue(schema_[i], values[i],
               "point " + std::to_string(labels_.size()));
  }
  values_.insert(values_.end(), values.begin(), values.end());
  labels_.push_back(label);
}

void Dataset::Reserve(std::size_t n) {
  values_.reserve(n * schema_.size());
  labels_.reserve(n);
}

std::size_t Dataset::CountLabel(Label l) const {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), l));
}

Dataset Dataset::Subset(std::span<const std::size_t> indices) const {
  Dataset out(schema_);
  out.Reserve(indices.size());
  for (std::size_t i : indices) {
    auto v = values(i);
    out.values_.insert(out.values_.end(), v.begin(), v.end());
    out.labels_.push_back(labels_[i]);
  }
  return out;
}

bool Dataset::operator==(const Dataset& other) const {
  if (!(schema_ == other.schema_) || labels_ != other.labels_) return false;
  if (values_.size() != other.values_.size()) return false;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (std::bit_cast<std::uint64_t>(values_[i]) !=
        std::bit_cast<std::uint64_t>(other.values_[i]))
      return false;
  }
  return true;
}

Dataset ParseCsv(std::istream& in, const AttributeSchema& schema,
                 const CsvOptions& options) {
  const std::size_t m = schema.size();
  std::vector<std::string> names;
  std::vector<std::size_t> attr_column(m);
  std::size_t label_col = 0;
  std::size_t expected_fields = 0;
  std::size_t line_no = 0;
  std::string line;

  auto resolve = [&](const std::vector<std::string>& cols) {
    for (std::size_t a = 0; a < m; ++a) {
      auto it = std::find(cols.begin(), cols.end(), schema[a].name);
      if (it == cols.end()) {
        throw Error(ErrorCode::kParse,
                    "column for attribute '" + schema[a].name + "' not found");
      }
      attr_column[a] = static_cast<std::size_t>(it - cols.begin());
    }
    auto it = std::find(cols.begin(), cols.end(), options.label_column);
    if (it == cols.end()) {
      throw Error(ErrorCode::kParse,
                  "label column '" + options.label_column + "' not found");
    }
    label_col = static_cast<std::size_t>(it - cols.begin());
    expected_fields = cols.size();
  };

  if (options.has_header) {
    while (std::getline(in, line)) {
      ++line_no;
      if (Trim(line).empty()) continue;
      for (auto f : SplitFields(line, options.delimiter)) names.emplace_back(f);
      break;
    }
    if (names.empty()) throw Error(ErrorCode::kParse, "no rows");
    resolve(names);
  } else if (!options.columns.empty()) {
    resolve(options.columns);
  } else {
    for (std::size_t a = 0; a < m; ++a) attr_column[a] = a;
    label_col = m;
    expected_fields = m + 1;
  }

  Dataset ds(schema);
  std::vector<double> row(m);
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    auto fields = SplitFields(line, options.delimiter);
    if (fields.size() != expected_fields) {
      throw Error(ErrorCode::kParse,
                  "row " + std::to_string(line_no) + " has " +
                      std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(expected_fields));
    }
    for (std::size_t a = 0; a < m; ++a) {
      std::size_t c = attr_column[a];
      if (!ParseReal(fields[c], row[a])) {
        throw Error(ErrorCode::kParse, "malformed number '" +
                                           std::string(fields[c]) + "' at " +
                                           Where(line_no, c + 1));
      }
      CheckValue(schema[a], row[a], Where(line_no, c + 1));
    }
    Label l = MapLabel(fields[label_col], options.positive_labels,
                       options.negative_labels, Where(line_no, label_col + 1));
    ds.Add(row, l);
  }
  if (ds.empty()) throw Error(ErrorCode::kParse, "no rows");
  return ds;
}

Dataset LoadCsv(const std::filesystem::path& path,
                const AttributeSchema& schema, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return ParseCsv(in, schema, options);
}

void WriteCsv(std::ostream& out, const Dataset& ds) {
  const AttributeSchema& schema = ds.schema();
  for (std::size_t a = 0; a < schema.size(); ++a) out << schema[a].name << ',';
  out << "label\n";
  char buf[32];
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (double v : ds.values(i)) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << buf << ',';
    }
    out << (ds.label(i) == Label::kPositive ? "1" : "0") << '\n';
  }
}

Dataset ParseSparse(std::istream& in, const SparseOptions& options) {
  struct Row {
    Label label;
    std::vector<std::pair<std::size_t, double>> entries;
  };
  std::vector<Row> rows;
  std::size_t max_index = 0;
  std::size_t line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = SplitWhitespace(line);
    if (tokens.empty()) continue;
    Row row;
    row.label = MapLabel(tokens[0], options.positive_labels,
                         options.negative_labels, Where(line_no, 1));
    std::size_t prev = 0;
    for (std::size_t t = 1; t < tokens.size(); ++t) {
      auto tok = tokens[t];
      auto colon = tok.find(':');
      std::size_t idx = 0;
      double v = 0;
      if (colon == std::string_view::npos ||
          std::from_chars(tok.data(), tok.data() + colon, idx).ptr !=
              tok.data() + colon ||
          idx == 0 || !ParseReal(tok.substr(colon + 1), v)) {
        throw Error(ErrorCode::kParse, "malformed entry '" + std::string(tok) +
                                           "' at " + Where(line_no, t + 1));
      }
      if (idx == prev) {
        throw Error(ErrorCode::kParse, "duplicate index " +
                                           std::to_string(idx) + " at " +
                                           Where(line_no, t + 1));
      }
      if (idx < prev) {
        throw Error(ErrorCode::kIndexOutOfOrder,
                    "index " + std::to_string(idx) + " after " +
                        std::to_string(prev) + " at " + Where(line_no, t + 1));
      }
      prev = idx;
      max_index = std::max(max_index, idx);
      row.entries.emplace_back(idx - 1, v);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorCode::kParse, "no rows");

  std::size_t m = options.num_attributes.value_or(max_index);
  if (m == 0) throw Error(ErrorCode::kParse, "no attributes");
  if (max_index > m) {
    throw Error(ErrorCode::kParse, "index " + std::to_string(max_index) +
                                       " exceeds attribute count " +
                                       std::to_string(m));
  }

  // Infer ranges; implicit zeros count as observed values.
  std::vector<double> lo(m, 0.0), hi(m, 0.0);
  std::vector<bool> binary(m, true);
  std::vector<std::size_t> explicit_count(m, 0);
  for (const Row& r : rows) {
    for (auto [j, v] : r.entries) {
      lo[j] = std::min(lo[j], v);
      hi[j] = std::max(hi[j], v);
      if (v != 0.0 && v != 1.0) binary[j] = false;
      ++explicit_count[j];
    }
  }
  std::vector<Attribute> attrs(m);
  for (std::size_t j = 0; j < m; ++j) {
    attrs[j].name = "f" + std::to_string(j + 1);
    if (binary[j]) {
      attrs[j].kind = AttributeKind::kBinary;
      attrs[j].min = 0;
      attrs[j].max = 1;
    } else {
      attrs[j].kind = AttributeKind::kContinuous;
      attrs[j].min = lo[j];
      attrs[j].max = hi[j];
    }
  }
  Dataset ds{AttributeSchema(std::move(attrs))};
  ds.Reserve(rows.size());
  std::vector<double> dense(m);
  for (const Row& r : rows) {
    std::fill(dense.begin(), dense.end(), 0.0);
    for (auto [j, v] : r.entries) dense[j] = v;
    ds.Add(dense, r.label);
  }
  return ds;
}

Dataset LoadSparse(const std::filesystem::path& path,
                   const SparseOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return ParseSparse(in, options);
}

SplitIndices SplitIndicesFor(std::size_t n, std::uint64_t seed,
                             const SplitFractions& fractions) {
  if (n < 10) {
    throw Error(ErrorCode::kTooFewPoints,
                "split needs at least 10 points, got " + std::to_string(n));
  }
  if (!(fractions.test >= 0 && fractions.test < 1 &&
        fractions.validation >= 0 && fractions.validation < 1)) {
    throw Error(ErrorCode::kConfig, "split fractions must lie in [0, 1)");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng = Substream(seed, StreamTag::kSplit, {});
  rng.Shuffle(std::span<std::size_t>(order));

  // The small offset keeps products like 0.1 * 30 from flooring to 2.
  auto n_test = static_cast<std::size_t>(
      std::floor(fractions.test * static_cast<double>(n) + 1e-9));
  auto n_val = static_cast<std::size_t>(std::floor(
      fractions.validation * static_cast<double>(n - n_test) + 1e-9));
  SplitIndices out;
  out.test.assign(order.begin(), order.begin() + n_test);
  out.validation.assign(order.begin() + n_test,
                        order.begin() + n_test + n_val);
  out.train.assign(order.begin() + n_test + n_val, order.end());
  return out;
}

Partition Split(const Dataset& ds, std::uint64_t seed,
                const SplitFractions& fractions) {
  SplitIndices idx = SplitIndicesFor(ds.size(), seed, fractions);
  return {ds.Subset(idx.train), ds.Subset(idx.validation),
          ds.Subset(idx.test)};
}

}  // namespace rdf
