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

#ifndef RDF_MANIFEST_H_
#define RDF_MANIFEST_H_

#include <cstdint>
#include <filesystem>
#include <string>

#include "rdf/dataset.h"

namespace rdf {

enum class DataFormat { kCsv, kSparse };

// Text (JSON) description of a dataset: where the file lives, how to parse
// it, its public attribute ranges, the label mapping and the split protocol.
//
//   {
//     "name": "mammographic",
//     "format": "csv",
//     "path": "mammographic.csv",
//     "has_header": true,
//     "label_column": "severity",
//     "positive_labels": ["1"], "negative_labels": ["0"],
//     "attributes": [{"name": "age", "kind": "continuous",
//                     "min": 18, "max": 96}, ...],
//     "split": {"test": 0.1, "validation": 0.1},
//     "seed": 42
//   }
//
// Relative paths resolve against the manifest's directory.
struct DatasetManifest {
  std::string name;
  DataFormat format = DataFormat::kCsv;
  std::filesystem::path data_path;
  AttributeSchema schema;
  CsvOptions csv;
  SparseOptions sparse;
  SplitFractions split;
  std::uint64_t seed = 0;
};

DatasetManifest ParseManifest(const std::string& json_text,
                              const std::filesystem::path& base_dir);
DatasetManifest LoadManifest(const std::filesystem::path& path);

Dataset LoadDataset(const DatasetManifest& manifest);

}  // namespace rdf

#endif  // RDF_MANIFEST_H_
