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

#ifndef MRAP_TESTS_SUPPORT_SYNTHETIC_H_
#define MRAP_TESTS_SUPPORT_SYNTHETIC_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mrap/ingest.h"

namespace mrap::testing {

// Bundle from explicit triples and records, then marks every entry for which
// `observed(i)` is false as Missing and Test.
DatasetBundle MaskedBundle(const std::vector<Triple>& triples,
                           const std::vector<AttributeRecord>& records,
                           const std::function<bool(const AttributeEntry&)>&
                               observed);

// Same for an existing bundle, by entry index.
DatasetBundle Mask(const DatasetBundle& bundle,
                   const std::vector<bool>& observed);

// A random connected graph: up to `max_nodes` nodes joined by a random tree
// plus a few extra edges, up to 4 relation types, up to 3 attribute types.
// Attribute values follow a noisy latent affine structure so that the fitted
// models are informative. At least 30% of the entries are observed and every
// node carries at least one observed entry.
struct RandomInstanceOptions {
  int max_nodes = 20;
  int max_relations = 4;
  int max_attr_types = 3;
  double min_observed = 0.3;
  double noise = 0.05;
};
DatasetBundle RandomInstance(std::uint64_t seed,
                             const RandomInstanceOptions& options = {});

// Noiseless data generated from planted affine models on a random tree: each
// relation shifts a latent coordinate by a fixed offset and every attribute
// is an affine function of that coordinate, so every fitted model is exact.
// `truth` holds the planted value of every entry.
DatasetBundle PlantedInstance(std::uint64_t seed, int nodes);

// People linked by parent_of edges with date_of_birth / date_of_death:
// birth(child) = birth(parent) + 30 + N(0, 5), death = birth + 70 + N(0, 3).
// Split 80/10/10 and subsampled to half of the training set.
DatasetBundle GenealogyInstance(std::uint64_t seed, int people);

// Wide random graph for benchmarks and thread-invariance checks.
DatasetBundle LargeInstance(std::uint64_t seed, int nodes, int relations,
                            int attr_types, double observed);

// Writes triples.tsv and attrs.tsv (every entry at its true value) under
// `dir`, in graph edge order and entry order.
void WriteDatasetFiles(const DatasetBundle& bundle, const std::string& dir);

}  // namespace mrap::testing

#endif  // MRAP_TESTS_SUPPORT_SYNTHETIC_H_
