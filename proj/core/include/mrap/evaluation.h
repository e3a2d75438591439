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

#ifndef MRAP_EVALUATION_H_
#define MRAP_EVALUATION_H_

#include <cstddef>
#include <string>
#include <vector>

#include "mrap/ingest.h"
#include "mrap/model_registry.h"
#include "mrap/propagation.h"

namespace mrap {

// Every target gets the mean of the observed values of its type. Throws
// DataError naming a target type without observed values.
Predictions BaselineGlobal(const DatasetBundle& bundle);

// Every target gets the mean of the observed same-type values among its
// neighbors (both directions, any relation); Global when there are none.
Predictions BaselineLocal(const DatasetBundle& bundle);

struct EvalRow {
  AttrTypeId attr;
  std::string attr_label;
  double mae = 0.0;
  double rmse = 0.0;
  std::size_t n_test = 0;
  std::size_t n_unpredicted = 0;
};

struct EvalReport {
  std::string method;
  std::string setup;
  std::vector<EvalRow> rows;  // attribute types with at least one entry
  std::vector<std::string> warnings;
};

// MAE and RMSE per attribute type over the entries of `split`. Targets
// absent from `predictions` are scored at the Global value and counted in
// n_unpredicted.
EvalReport Evaluate(const Predictions& predictions, const DatasetBundle& truth,
                    Split split, std::string method, std::string setup);

// Full propagation, then without inner messages, then without cross-type
// messages, all on the same bundle and registry.
std::vector<EvalReport> AblationSuite(const DatasetBundle& bundle,
                                      const ModelRegistry& registry,
                                      const PropagationConfig& config,
                                      Split split, const std::string& setup);

struct Differences {
  std::vector<double> values;  // y - x over the key's observed pairs
  double mean = 0.0;
  double stddev = 0.0;         // population standard deviation
  std::vector<std::string> warnings;
};

Differences ExportDifferences(const DatasetBundle& bundle, const PathKey& key);

}  // namespace mrap

#endif  // MRAP_EVALUATION_H_
