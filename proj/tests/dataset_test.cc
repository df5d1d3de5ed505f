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
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "rdf/manifest.h"
#include "test_util.h"

namespace rdf {
namespace {

using testing::ExpectCode;

AttributeSchema TwoContinuous() {
  return AttributeSchema({{"x", AttributeKind::kContinuous, 0.0, 5.0},
                          {"y", AttributeKind::kContinuous, -1.0, 1.0}});
}

TEST(Schema, RejectsBadRanges) {
  ExpectCode(ErrorCode::kSchemaViolation, [] { AttributeSchema(std::vector<Attribute>{}); });
  ExpectCode(ErrorCode::kSchemaViolation, [] {
    AttributeSchema({{"x", AttributeKind::kContinuous, 2.0, 1.0}});
  });
  ExpectCode(ErrorCode::kSchemaViolation, [] {
    AttributeSchema({{"b", AttributeKind::kBinary, 0.0, 2.0}});
  });
}

TEST(Schema, HashTracksContent) {
  EXPECT_EQ(TwoContinuous().Hash(), TwoContinuous().Hash());
  EXPECT_NE(TwoContinuous().Hash(), AttributeSchema::AllBinary(2).Hash());
}

TEST(Csv, ParsesRowsAndLabels) {
  std::istringstream in("1.5,0.25,1\n0,-1,0\n5,1,+\n");
  Dataset ds = ParseCsv(in, TwoContinuous(), {});
  ASSERT_EQ(ds.size(), 3u);
  EXPECT_EQ(ds.values(0)[0], 1.5);
  EXPECT_EQ(ds.values(0)[1], 0.25);
  EXPECT_EQ(ds.label(0), Label::kPositive);
  EXPECT_EQ(ds.label(1), Label::kNegative);
  EXPECT_EQ(ds.label(2), Label::kPositive);
}

TEST(Csv, HeaderSelectsColumnsByName) {
  CsvOptions opt;
  opt.has_header = true;
  opt.label_column = "cls";
  std::istringstream in("cls,y,x\n1,0.5,2\n");
  Dataset ds = ParseCsv(in, TwoContinuous(), opt);
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds.values(0)[0], 2.0);
  EXPECT_EQ(ds.values(0)[1], 0.5);
}

TEST(Csv, EmptyFileIsParseError) {
  std::istringstream in("");
  try {
    ParseCsv(in, TwoContinuous(), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find("no rows"), std::string::npos);
  }
}

TEST(Csv, OutOfRangeValueIsSchemaViolation) {
  std::istringstream in("7.0,0,1\n");
  ExpectCode(ErrorCode::kSchemaViolation,
             [&] { ParseCsv(in, TwoContinuous(), {}); });
}

TEST(Csv, MalformedRowReportsPosition) {
  std::istringstream in("1,0,1\n1,abc,0\n");
  try {
    ParseCsv(in, TwoContinuous(), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    std::string msg = e.what();
    EXPECT_NE(msg.find("row 2"), std::string::npos) << msg;
    EXPECT_NE(msg.find("column 2"), std::string::npos) << msg;
  }
}

TEST(Csv, WrongFieldCountAndUnknownLabel) {
  std::istringstream short_row("1,0\n");
  ExpectCode(ErrorCode::kParse, [&] { ParseCsv(short_row, TwoContinuous(), {}); });
  std::istringstream bad_label("1,0,maybe\n");
  ExpectCode(ErrorCode::kUnknownLabel,
             [&] { ParseCsv(bad_label, TwoContinuous(), {}); });
}

TEST(Csv, BinaryAttributeMustBeZeroOrOne) {
  std::istringstream in("0.5,1\n");
  ExpectCode(ErrorCode::kSchemaViolation,
             [&] { ParseCsv(in, AttributeSchema::AllBinary(1), {}); });
}

TEST(Csv, RoundTripIsBitExact) {
  Rng rng(5);
  Dataset ds = testing::RandomMixed(200, rng);
  std::stringstream buf;
  WriteCsv(buf, ds);
  CsvOptions opt;
  opt.has_header = true;
  Dataset back = ParseCsv(buf, ds.schema(), opt);
  EXPECT_TRUE(back == ds);
}

TEST(Sparse, FillsMissingWithZero) {
  SparseOptions opt;
  opt.num_attributes = 5;
  std::istringstream in("+1 3:1\n");
  Dataset ds = ParseSparse(in, opt);
  ASSERT_EQ(ds.size(), 1u);
  ASSERT_EQ(ds.num_attributes(), 5u);
  std::vector<double> expect{0, 0, 1, 0, 0};
  for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(ds.values(0)[j], expect[j]);
  EXPECT_EQ(ds.label(0), Label::kPositive);
}

TEST(Sparse, DuplicateAndDescendingIndices) {
  std::istringstream dup("+1 2:1 2:1\n");
  ExpectCode(ErrorCode::kParse, [&] { ParseSparse(dup, {}); });
  std::istringstream desc("+1 3:1 2:1\n");
  ExpectCode(ErrorCode::kIndexOutOfOrder, [&] { ParseSparse(desc, {}); });
}

TEST(Sparse, InfersKindsAndRanges) {
  std::istringstream in("+1 1:1 2:2.5\n-1 2:-1\n");
  Dataset ds = ParseSparse(in, {});
  ASSERT_EQ(ds.num_attributes(), 2u);
  EXPECT_EQ(ds.schema()[0].kind, AttributeKind::kBinary);
  EXPECT_EQ(ds.schema()[1].kind, AttributeKind::kContinuous);
  EXPECT_EQ(ds.schema()[1].min, -1.0);
  EXPECT_EQ(ds.schema()[1].max, 2.5);
}

TEST(Sparse, DensifyingKeepsExplicitValues) {
  std::istringstream in("+1 1:0.5 4:-2\n-1 2:3\n");
  Dataset ds = ParseSparse(in, {});
  EXPECT_EQ(ds.values(0)[0], 0.5);
  EXPECT_EQ(ds.values(0)[3], -2.0);
  EXPECT_EQ(ds.values(1)[1], 3.0);
}

TEST(Split, SizesFollowFloorRule) {
  SplitIndices s = SplitIndicesFor(1372, 9);
  EXPECT_EQ(s.test.size(), 137u);
  EXPECT_EQ(s.validation.size(), 123u);
  EXPECT_EQ(s.train.size(), 1112u);
  SplitIndices ten = SplitIndicesFor(10, 9);
  EXPECT_EQ(ten.test.size(), 1u);
  EXPECT_EQ(ten.validation.size(), 0u);
  EXPECT_EQ(ten.train.size(), 9u);
}

TEST(Split, IsDisjointCoverAndDeterministic) {
  for (std::size_t n : {10u, 11u, 30u, 99u, 830u}) {
    SplitIndices s = SplitIndicesFor(n, n);
    std::set<std::size_t> all;
    for (auto* part : {&s.train, &s.validation, &s.test})
      for (std::size_t i : *part) EXPECT_TRUE(all.insert(i).second);
    EXPECT_EQ(all.size(), n);
    EXPECT_EQ(*all.rbegin(), n - 1);
    SplitIndices again = SplitIndicesFor(n, n);
    EXPECT_EQ(s.train, again.train);
    EXPECT_EQ(s.test, again.test);
  }
  EXPECT_NE(SplitIndicesFor(100, 1).test, SplitIndicesFor(100, 2).test);
}

TEST(Split, TooFewPoints) {
  ExpectCode(ErrorCode::kTooFewPoints, [] { SplitIndicesFor(9, 1); });
}

TEST(Manifest, ParsesAndResolvesPaths) {
  DatasetManifest m = ParseManifest(R"({
    "name": "toy", "path": "toy.csv", "has_header": true,
    "label_column": "y", "positive_labels": ["yes"], "negative_labels": ["no"],
    "attributes": [{"name": "a", "kind": "binary"},
                   {"name": "b", "kind": "continuous", "min": -2, "max": 2}],
    "split": {"test": 0.2, "validation": 0.1}, "seed": 3})",
                                    "/data");
  EXPECT_EQ(m.name, "toy");
  EXPECT_EQ(m.data_path, std::filesystem::path("/data/toy.csv"));
  EXPECT_EQ(m.schema.size(), 2u);
  EXPECT_EQ(m.schema[1].min, -2.0);
  EXPECT_EQ(m.csv.label_column, "y");
  EXPECT_EQ(m.split.test, 0.2);
  EXPECT_EQ(m.seed, 3u);
  ExpectCode(ErrorCode::kConfig, [] { ParseManifest("{not json", "."); });
  ExpectCode(ErrorCode::kConfig, [] { ParseManifest("{}", "."); });
}

TEST(Manifest, ShippedMammographicLoads) {
  DatasetManifest m = LoadManifest(RDF_DATA_DIR "/mammographic/mammographic.json");
  Dataset ds = LoadDataset(m);
  EXPECT_EQ(ds.size(), 830u);
  EXPECT_EQ(ds.num_attributes(), 5u);
  EXPECT_EQ(ds.CountLabel(Label::kPositive), 403u);
}

}  // namespace
}  // namespace rdf
