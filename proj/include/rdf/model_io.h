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

#ifndef RDF_MODEL_IO_H_
#define RDF_MODEL_IO_H_

#include <filesystem>
#include <iosfwd>

#include "rdf/forest.h"

namespace rdf {

// Line-oriented text format, version 1. Reals are written as hex floats so a
// model round-trips bit for bit:
//
//   rdforest-model 1
//   mode plain|private|private-zero-noise
//   eta <hex>
//   height <h>
//   trees <k>
//   schema <m> <hash>
//   attr binary|continuous <min> <max> <name>      (m lines)
//   tree <t>
//   node <attribute> <threshold>                   (2^h - 1 lines)
//   leaf <n+> <n-> <theta> counted|uniform         (plain, 2^h lines)
//   leaf <theta_p> counted|uniform                 (private, 2^h lines)
//   end
//
// A private model carries only the published leaf fractions; the raw and
// noisy counters are never written.
void WriteModel(std::ostream& out, const Forest& forest);
// Throws ParseError on malformed input and SchemaViolation when the stored
// schema hash does not match the attributes.
Forest ReadModel(std::istream& in);

void SaveModel(const std::filesystem::path& path, const Forest& forest);
Forest LoadModel(const std::filesystem::path& path);

}  // namespace rdf

#endif  // RDF_MODEL_IO_H_
