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

#ifndef RDF_DATASET_H_
#define RDF_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rdf {

enum class AttributeKind : std::uint8_t { kBinary, kContinuous };

struct Attribute {
  std::string name;
  AttributeKind kind = AttributeKind::kContinuous;
  // Public range of the attribute. Binary attributes always use [0, 1].
  double min = 0.0;
  double max = 1.0;
};

// Ordered list of attributes with their publicly known ranges. Immutable
// after construction; the constructor rejects empty schemas, inverted ranges
// and binary attributes whose range is not [0, 1].
class AttributeSchema {
 public:
  AttributeSchema() = default;
  explicit AttributeSchema(std::vector<Attribute> attributes);

  static AttributeSchema AllBinary(std::size_t m);

  std::size_t size() const { return attributes_.size(); }
  const Attribute& operator[](std::size_t i) const { return attributes_[i]; }
  std::span<const Attribute> attributes() const { return attributes_; }
  bool all_binary() const;

  // FNV-1a over names, kinds and the bit patterns of the ranges.
  std::uint64_t Hash() const;

  bool operator==(const AttributeSchema& other) const;

 private:
  std::vector<Attribute> attributes_;
};

enum class Label : std::uint8_t { kNegative = 0, kPositive = 1 };

inline char LabelChar(Label l) { return l == Label::kPositive ? '+' : '-'; }

struct PointView {
  std::span<const double> values;
  Label label;
};

// Labeled points stored row-major. Every added point is checked against the
// schema, so a Dataset always conforms to it.
class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(AttributeSchema schema);

  void Add(std::span<const double> values, Label label);
  void Reserve(std::size_t n);

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  std::size_t num_attributes() const { return schema_.size(); }
  const AttributeSchema& schema() const { return schema_; }

  std::span<const double> values(std::size_t i) const {
    return {values_.data() + i * schema_.size(), schema_.size()};
  }
  Label label(std::size_t i) const { return labels_[i]; }
  PointView point(std::size_t i) const { return {values(i), labels_[i]}; }
  std::span<const Label> labels() const { return labels_; }

  std::size_t CountLabel(Label l) const;

  Dataset Subset(std::span<const std::size_t> indices) const;

  bool operator==(const Dataset& other) const;

 private:
  AttributeSchema schema_;
  std::vector<double> values_;
  std::vector<Label> labels_;
};

struct CsvOptions {
  bool has_header = false;
  // Name of the label column. Without a header, `columns` names the fields
  // in file order; when `columns` is empty the file is expected to hold the
  // schema attributes in order followed by the label.
  std::string label_column = "label";
  std::vector<std::string> columns;
  std::vector<std::string> positive_labels = {"1", "+1", "+"};
  std::vector<std::string> negative_labels = {"0", "-1", "-"};
  char delimiter = ',';
};

Dataset ParseCsv(std::istream& in, const AttributeSchema& schema,
                 const CsvOptions& options);
Dataset LoadCsv(const std::filesystem::path& path,
                const AttributeSchema& schema, const CsvOptions& options);

// Writes a header line followed by one row per point; reals are printed with
// 17 significant digits so a reload reproduces them bit for bit.
void WriteCsv(std::ostream& out, const Dataset& ds);

struct SparseOptions {
  // Attribute count; inferred from the largest index when absent.
  std::optional<std::size_t> num_attributes;
  std::vector<std::string> positive_labels = {"+1", "1"};
  std::vector<std::string> negative_labels = {"-1", "0"};
};

// Lines of the form `<label> <idx>:<val> ...` with 1-based strictly
// ascending indices. Missing entries are 0. An attribute whose values are
// all in {0, 1} becomes binary; otherwise continuous with the observed range,
// which from then on is treated as the public range.
Dataset ParseSparse(std::istream& in, const SparseOptions& options);
Dataset LoadSparse(const std::filesystem::path& path,
                   const SparseOptions& options = {});

struct SplitFractions {
  double test = 0.1;
  double validation = 0.1;
};

struct Partition {
  Dataset train;
  Dataset validation;
  Dataset test;
};

// Shuffles with a stream derived from `seed`, then takes
// floor(test * n) test points and floor(validation * (n - test)) validation
// points; the rest is the training set. Requires n >= 10.
Partition Split(const Dataset& ds, std::uint64_t seed,
                const SplitFractions& fractions = {});

// Index form of Split, exposed for tests.
struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
  std::vector<std::size_t> test;
};
SplitIndices SplitIndicesFor(std::size_t n, std::uint64_t seed,
                             const SplitFractions& fractions = {});

}  // namespace rdf

#endif  // RDF_DATASET_H_
