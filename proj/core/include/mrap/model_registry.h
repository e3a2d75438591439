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

#ifndef MRAP_MODEL_REGISTRY_H_
#define MRAP_MODEL_REGISTRY_H_

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mrap/attributes.h"
#include "mrap/graph.h"
#include "mrap/ingest.h"
#include "mrap/regression.h"

namespace mrap {

// Blocks message passing between two attribute types, optionally only across
// one relation ("INNER" selects the within-node link). Matching ignores the
// order of the two types and the traversal direction.
struct Exclusion {
  std::string attr_a;
  std::string attr_b;
  std::optional<std::string> relation;

  // Parses "attrA,attrB[,relation]". Throws InvalidArgument.
  static Exclusion Parse(std::string_view text);
};

inline constexpr std::string_view kInnerLabel = "INNER";

struct AdmissionConfig {
  std::size_t min_support = 5;
  double r2_min = 0.0;
  std::vector<Exclusion> exclusions;
  // sigma2 is floored at variance_floor_scale * scale(dep)^2.
  double variance_floor_scale = 1e-12;
  // Reverse models need |eta| >= eta_min_scale * scale(dep) / scale(indep).
  double eta_min_scale = 1e-9;
};

enum class Rejection : std::size_t {
  kInsufficientSupport,
  kDegenerateRegressor,
  kLowR2,
  kExcluded,
  kNonInvertible,
  kCount,
};

const char* RejectionName(Rejection r);

struct RegistryStats {
  std::size_t fitted = 0;
  std::size_t admitted_forward = 0;
  std::size_t derived_reverse = 0;
  std::array<std::size_t, static_cast<std::size_t>(Rejection::kCount)>
      rejected{};

  std::size_t& count(Rejection r) {
    return rejected[static_cast<std::size_t>(r)];
  }
  std::size_t count(Rejection r) const {
    return rejected[static_cast<std::size_t>(r)];
  }
};

// Frozen lookup from PathKey to its admitted model.
class ModelRegistry {
 public:
  ModelRegistry() = default;
  explicit ModelRegistry(AdmissionConfig config) : config_(std::move(config)) {}

  // Replaces any model already stored under the same key.
  void Insert(const RegressionModel& model);

  const RegressionModel* Find(const PathKey& key) const;
  std::size_t size() const { return models_.size(); }
  bool empty() const { return models_.empty(); }
  const std::map<PathKey, RegressionModel>& models() const { return models_; }

  const AdmissionConfig& config() const { return config_; }
  const RegistryStats& stats() const { return stats_; }
  RegistryStats& mutable_stats() { return stats_; }

 private:
  AdmissionConfig config_;
  std::map<PathKey, RegressionModel> models_;
  RegistryStats stats_;
};

// Observed (y, x) samples for one key. Relational keys take one pair per
// edge incidence whose target end holds y and source end holds x; inner keys
// take one pair per node holding both. Order follows edge insertion order or
// entity order.
std::vector<Pair> ExtractPairs(const KnowledgeGraph& graph,
                               const AttributeTable& attrs, const PathKey& key);

// Samples for every Forward relational key and every canonical inner key
// (dep < indep) in one pass. Pair order per key matches ExtractPairs.
std::map<PathKey, std::vector<Pair>> CollectTrainingPairs(
    const KnowledgeGraph& graph, const AttributeTable& attrs);

// Scale used for flooring and slope thresholds: the observed range, or
// max(|mean|, 1) for a type whose observed values are all equal.
double AttrScale(const AttributeTable& attrs, AttrTypeId a);

bool IsExcluded(const PathKey& key, const AdmissionConfig& config,
                const KnowledgeGraph& graph, const AttributeTable& attrs);

// Fits every candidate key, applies the admission filters, and derives the
// reverse of every admitted model.
ModelRegistry BuildRegistry(const KnowledgeGraph& graph,
                            const AttributeTable& attrs,
                            const AdmissionConfig& config);

inline ModelRegistry BuildRegistry(const DatasetBundle& bundle,
                                   const AdmissionConfig& config) {
  return BuildRegistry(bundle.graph, bundle.attrs, config);
}

// Number of (source entry, model) combinations that carry one message per
// iteration: for every adjacency incidence and every inner attribute pair,
// count it when the source entry exists, the target entry exists, and the
// registry holds a model for the key.
std::size_t CountPaths(const KnowledgeGraph& graph,
                       const ModelRegistry& registry,
                       const AttributeTable& attrs);

}  // namespace mrap

#endif  // MRAP_MODEL_REGISTRY_H_
