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

#include "rdf/manifest.h"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "rdf/errors.h"

namespace rdf {
namespace {

using nlohmann::json;

std::vector<std::string> StringList(const json& j, const char* key,
                                    std::vector<std::string> fallback) {
  if (!j.contains(key)) return fallback;
  std::vector<std::string> out;
  for (const auto& v : j.at(key)) {
    out.push_back(v.is_string() ? v.get<std::string>() : v.dump());
  }
  return out;
}

AttributeKind ParseKind(const std::string& s) {
  if (s == "binary") return AttributeKind::kBinary;
  if (s == "continuous") return AttributeKind::kContinuous;
  throw Error(ErrorCode::kConfig, "unknown attribute kind '" + s + "'");
}

}  // namespace

DatasetManifest ParseManifest(const std::string& json_text,
                              const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfig, std::string("manifest: ") + e.what());
  }
  DatasetManifest m;
  try {
    m.name = j.value("name", std::string("dataset"));
    std::string format = j.value("format", std::string("csv"));
    if (format == "csv") {
      m.format = DataFormat::kCsv;
    } else if (format == "sparse") {
      m.format = DataFormat::kSparse;
    } else {
      throw Error(ErrorCode::kConfig, "unknown format '" + format + "'");
    }
    std::filesystem::path p = j.at("path").get<std::string>();
    m.data_path = p.is_absolute() ? p : base_dir / p;

    if (m.format == DataFormat::kCsv) {
      std::vector<Attribute> attrs;
      for (const auto& a : j.at("attributes")) {
        Attribute attr;
        attr.name = a.at("name").get<std::string>();
        attr.kind = ParseKind(a.value("kind", std::string("continuous")));
        if (attr.kind == AttributeKind::kBinary) {
          attr.min = 0;
          attr.max = 1;
        } else {
          attr.min = a.at("min").get<double>();
          attr.max = a.at("max").get<double>();
        }
        attrs.push_back(std::move(attr));
      }
      m.schema = AttributeSchema(std::move(attrs));
      m.csv.has_header = j.value("has_header", false);
      m.csv.label_column = j.value("label_column", std::string("label"));
      m.csv.columns = StringList(j, "columns", {});
      m.csv.positive_labels =
          StringList(j, "positive_labels", m.csv.positive_labels);
      m.csv.negative_labels =
          StringList(j, "negative_labels", m.csv.negative_labels);
      std::string delim = j.value("delimiter", std::string(","));
      if (delim.size() != 1)
        throw Error(ErrorCode::kConfig, "delimiter must be one character");
      m.csv.delimiter = delim[0];
    } else {
      if (j.contains("num_attributes"))
        m.sparse.num_attributes = j.at("num_attributes").get<std::size_t>();
      m.sparse.positive_labels =
          StringList(j, "positive_labels", m.sparse.positive_labels);
      m.sparse.negative_labels =
          StringList(j, "negative_labels", m.sparse.negative_labels);
    }
    if (j.contains("split")) {
      m.split.test = j.at("split").value("test", 0.1);
      m.split.validation = j.at("split").value("validation", 0.1);
    }
    m.seed = j.value("seed", std::uint64_t{0});
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfig, std::string("manifest: ") + e.what());
  }
  return m;
}

DatasetManifest LoadManifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfig, "cannot open manifest " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseManifest(buf.str(), path.parent_path());
}

Dataset LoadDataset(const DatasetManifest& manifest) {
  if (manifest.format == DataFormat::kSparse)
    return LoadSparse(manifest.data_path, manifest.sparse);
  return LoadCsv(manifest.data_path, manifest.schema, manifest.csv);
}

}  // namespace rdf
