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

#ifndef MRAP_FIXED_POINT_H_
#define MRAP_FIXED_POINT_H_

#include <cstddef>

#include "mrap/ingest.h"
#include "mrap/model_registry.h"
#include "mrap/propagation.h"

namespace mrap {

// Solves the stationarity system of the propagation update directly:
//   y_v * Q_v = sum over incoming paths of w * (eta * x_src + tau)
// for every Missing entry with at least one incoming path. Observed values
// are constants; targets without paths are fixed at their initial value.
// Dense elimination, so meant for small instances (at most
// kMaxOracleUnknowns unknowns). Throws SingularSystem naming the targets
// whose equations are dependent.
inline constexpr std::size_t kMaxOracleUnknowns = 4000;

Predictions FixedPointOracle(const KnowledgeGraph& graph,
                             const AttributeTable& attrs,
                             const ModelRegistry& registry,
                             const PropagationConfig& config);

inline Predictions FixedPointOracle(const DatasetBundle& bundle,
                                    const ModelRegistry& registry,
                                    const PropagationConfig& config) {
  return FixedPointOracle(bundle.graph, bundle.attrs, registry, config);
}

}  // namespace mrap

#endif  // MRAP_FIXED_POINT_H_
