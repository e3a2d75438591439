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

#ifndef MRAP_PROPAGATION_H_
#define MRAP_PROPAGATION_H_

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "mrap/attributes.h"
#include "mrap/graph.h"
#include "mrap/ingest.h"
#include "mrap/model_registry.h"

namespace mrap {

enum class InitPolicy { kGlobalMean };

struct PropagationConfig {
  // Weight of the new aggregate against the previous value, in (0, 1].
  double damping = 0.5;
  // Stop once every type's largest update is below conv_frac * its range.
  double conv_frac = 0.001;
  int max_iters = 200;
  // Keep only same-type relational messages.
  bool no_cross = false;
  // Drop within-node messages.
  bool no_inner = false;
  InitPolicy init_policy = InitPolicy::kGlobalMean;
  // Worker count for the per-iteration sweep; 0 picks the hardware value.
  // Results do not depend on it.
  unsigned threads = 1;
  // Evaluate the loss after every iteration for the trace.
  bool record_loss = true;

  void Validate() const;
};

bool PathAllowed(const PathKey& key, const PropagationConfig& config);

// One active path into an attribute entry.
struct IncomingPath {
  std::size_t source = 0;  // entry index of the regressor value
  const RegressionModel* model = nullptr;
};

// Active paths into entry `target` in deterministic order: relational paths
// in adjacency order (then by source attribute type), then inner paths by
// source attribute type.
std::vector<IncomingPath> IncomingPaths(const KnowledgeGraph& graph,
                                        const AttributeTable& attrs,
                                        const ModelRegistry& registry,
                                        std::size_t target,
                                        const PropagationConfig& config);

struct Message {
  AttrKey target;
  double prediction = 0.0;
  double weight = 0.0;
  PathKey path;
  EntityId source;
};

// Messages into `target` evaluated at `values` (indexed by entry).
std::vector<Message> CollectMessages(std::span<const double> values,
                                     const KnowledgeGraph& graph,
                                     const AttributeTable& attrs,
                                     const ModelRegistry& registry,
                                     AttrKey target,
                                     const PropagationConfig& config);

// Weighted mean of the predictions; nullopt for an empty list, which means
// the caller keeps its previous value. Throws InvalidArgument on a
// non-positive weight.
std::optional<double> Aggregate(std::span<const Message> messages);

inline double Combine(double previous, double estimate, double damping) {
  return (1.0 - damping) * previous + damping * estimate;
}

struct TraceRow {
  int iteration = 0;
  AttrTypeId attr;
  double max_delta = 0.0;
  double loss = 0.0;
};

struct PropagationState {
  // Values at iteration k and k-1, indexed by attribute entry. Observed
  // entries keep their loaded value in both.
  std::vector<double> values;
  std::vector<double> previous;
  int iteration = 0;
  // Per attribute type: the observed range, or max(|mean|, 1) when all
  // observed values are equal. Convergence is measured against it.
  std::vector<double> ranges;
  std::vector<double> last_max_delta;  // per attribute type
  bool converged = false;
};

struct ImputationReport {
  int iterations = 0;
  bool converged = false;
  std::vector<double> final_delta;  // per attribute type
  std::vector<std::size_t> targets;  // entry indices that were imputed
  std::size_t never_messaged = 0;
  // Per entry: number of incoming messages and their total weight.
  std::vector<std::size_t> message_count;
  std::vector<double> total_weight;
  std::vector<TraceRow> trace;
};

struct PropagationResult {
  PropagationState state;
  ImputationReport report;
};

// Synchronous damped propagation. Missing entries start at their type's
// observed mean; every sweep reads only the previous buffer.
PropagationResult Run(const KnowledgeGraph& graph, const AttributeTable& attrs,
                      const ModelRegistry& registry,
                      const PropagationConfig& config);

inline PropagationResult Run(const DatasetBundle& bundle,
                             const ModelRegistry& registry,
                             const PropagationConfig& config) {
  return Run(bundle.graph, bundle.attrs, registry, config);
}

// Initial values: Observed entries at their value, the rest at the global
// mean of their type. Throws DataError for a target type with no observed
// value.
std::vector<double> InitialValues(const AttributeTable& attrs,
                                  InitPolicy policy);

// Sum over entries and active paths of weight * (value - prediction)^2.
double Loss(const KnowledgeGraph& graph, const AttributeTable& attrs,
            const ModelRegistry& registry, std::span<const double> values,
            const PropagationConfig& config);

using Predictions = std::map<AttrKey, double>;

// Final values of every imputed entry.
Predictions ToPredictions(const AttributeTable& attrs,
                          const PropagationResult& result);

// `entity<TAB>attribute_type<TAB>imputed_value<TAB>n_messages<TAB>total_weight`
void WriteImputations(const KnowledgeGraph& graph, const AttributeTable& attrs,
                      const PropagationResult& result, std::ostream& out);

// Reads the first three columns of an imputation file.
Predictions ReadImputations(std::istream& in, const KnowledgeGraph& graph,
                            const AttributeTable& attrs);

// CSV `iter,attr_type,max_delta,loss`.
void WriteTrace(const AttributeTable& attrs, const ImputationReport& report,
                std::ostream& out);

}  // namespace mrap

#endif  // MRAP_PROPAGATION_H_
