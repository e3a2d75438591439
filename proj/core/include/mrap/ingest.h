// Copyright 2026 The MrAP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MRAP_INGEST_H_
#define MRAP_INGEST_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "mrap/attributes.h"
#include "mrap/graph.h"

namespace mrap {

struct AttributeRecord {
  std::string entity;
  std::string attr;
  double value = 0.0;
};

struct AttributeParse {
  std::vector<AttributeRecord> records;
  // Rows whose (entity, attr) key repeated an earlier row. The later row wins.
  std::size_t duplicates = 0;
};

// Tab-separated `head relation tail`, one per line. Blank lines and lines
// starting with '#' are skipped. Throws ParseError on a wrong field count.
std::vector<Triple> ParseTriples(std::istream& in);

// Tab-separated `entity attribute_type value`. Throws ParseError when the
// value is not a finite decimal or scientific-notation number.
AttributeParse ParseAttributes(std::istream& in);

enum class Split : std::uint8_t { kTrain, kDev, kTest };

const char* SplitName(Split s);

struct SplitSpec {
  double train = 0.8;
  double dev = 0.1;
  double test = 0.1;
  std::uint64_t seed = 0;

  // Throws InvalidArgument unless all fractions are positive and sum to 1.
  void Validate() const;
};

// Graph plus attributes plus the split each attribute entry belongs to.
// `truth` and `split` are parallel to `attrs.entries()`; `attrs` carries the
// statuses of the current setup, so Missing entries hold NaN there while
// their loaded value stays available in `truth` for scoring.
struct DatasetBundle {
  KnowledgeGraph graph;
  AttributeTable attrs;
  std::vector<double> truth;
  std::vector<Split> split;
};

// Every entry Observed and labeled Train. Entities that only appear in the
// attribute records become isolated nodes.
DatasetBundle MakeBundle(std::span<const Triple> triples,
                         std::span<const AttributeRecord> records);

// Stratified per attribute type with largest-remainder rounding. Train
// entries become Observed, dev and test entries Missing.
DatasetBundle SplitAttributes(const DatasetBundle& bundle,
                              const SplitSpec& spec);

// Keeps ceil(fraction * |train of type|) train entries Observed per type; the
// rest of train and all of dev/test become Missing.
DatasetBundle SubsampleObserved(const DatasetBundle& bundle, double fraction,
                                std::uint64_t seed);

// Largest-remainder apportionment of n items over the given fractions. Ties
// go to the earlier bucket.
std::vector<std::size_t> Apportion(std::size_t n,
                                   std::span<const double> fractions);

// `entity<TAB>attribute_type<TAB>{train|dev|test}` per entry, in entry order.
void WriteSplitManifest(const DatasetBundle& bundle, std::ostream& out);

// Assigns splits from a manifest (train Observed, dev/test Missing). Throws
// ParseError for malformed lines and DataError when the manifest does not
// cover exactly the bundle's entries.
DatasetBundle ApplySplitManifest(const DatasetBundle& bundle,
                                 std::istream& in);

}  // namespace mrap

#endif  // MRAP_INGEST_H_
