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

#include "mrap/model_registry.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "mrap/errors.h"

namespace mrap {
namespace {

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

bool Observed(const AttributeEntry& e) { return e.status == Status::kObserved; }

// Target/source endpoints of an edge as seen through `link`.
std::pair<EntityId, EntityId> Endpoints(const Edge& e, Direction direction) {
  return direction == Direction::kForward ? std::pair{e.tail, e.head}
                                          : std::pair{e.head, e.tail};
}

}  // namespace

Exclusion Exclusion::Parse(std::string_view text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    parts.push_back(Trim(text.substr(start, comma == std::string_view::npos
                                                ? std::string_view::npos
                                                : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (parts.size() < 2 || parts.size() > 3 ||
      std::any_of(parts.begin(), parts.end(),
                  [](const std::string& p) { return p.empty(); })) {
    throw InvalidArgument("exclusion must look like attrA,attrB[,relation]: '" +
                          std::string(text) + "'");
  }
  Exclusion e{parts[0], parts[1], std::nullopt};
  if (parts.size() == 3) e.relation = parts[2];
  return e;
}

const char* RejectionName(Rejection r) {
  switch (r) {
    case Rejection::kInsufficientSupport:
      return "insufficient_support";
    case Rejection::kDegenerateRegressor:
      return "degenerate_regressor";
    case Rejection::kLowR2:
      return "low_r2";
    case Rejection::kExcluded:
      return "excluded";
    case Rejection::kNonInvertible:
      return "non_invertible_slope";
    case Rejection::kCount:
      break;
  }
  return "?";
}

void ModelRegistry::Insert(const RegressionModel& model) {
  models_.insert_or_assign(model.key, model);
}

const RegressionModel* ModelRegistry::Find(const PathKey& key) const {
  auto it = models_.find(key);
  return it == models_.end() ? nullptr : &it->second;
}

std::vector<Pair> ExtractPairs(const KnowledgeGraph& graph,
                               const AttributeTable& attrs,
                               const PathKey& key) {
  std::vector<Pair> pairs;
  auto observed_value = [&](EntityId v, AttrTypeId a) -> std::optional<double> {
    const auto index = attrs.Find({v, a});
    if (!index || !Observed(attrs.entry(*index))) return std::nullopt;
    return attrs.entry(*index).value;
  };
  if (key.is_inner()) {
    for (std::size_t v = 0; v < attrs.num_entities(); ++v) {
      const EntityId id(static_cast<std::uint32_t>(v));
      const auto y = observed_value(id, key.dep);
      const auto x = observed_value(id, key.indep);
      if (y && x) pairs.push_back({*y, *x});
    }
    return pairs;
  }
  for (const Edge& e : graph.edges()) {
    if (e.relation != key.link->relation) continue;
    const auto [target, source] = Endpoints(e, key.link->direction);
    const auto y = observed_value(target, key.dep);
    const auto x = observed_value(source, key.indep);
    if (y && x) pairs.push_back({*y, *x});
  }
  return pairs;
}

std::map<PathKey, std::vector<Pair>> CollectTrainingPairs(
    const KnowledgeGraph& graph, const AttributeTable& attrs) {
  std::map<PathKey, std::vector<Pair>> pairs;
  for (const Edge& e : graph.edges()) {
    const OrientedRelation link{e.relation, Direction::kForward};
    for (const AttributeEntry& y : attrs.EntriesOf(e.tail)) {
      if (!Observed(y)) continue;
      for (const AttributeEntry& x : attrs.EntriesOf(e.head)) {
        if (!Observed(x)) continue;
        pairs[PathKey::Relational(y.attr, x.attr, link)].push_back(
            {y.value, x.value});
      }
    }
  }
  for (std::size_t v = 0; v < attrs.num_entities(); ++v) {
    const auto entries =
        attrs.EntriesOf(EntityId(static_cast<std::uint32_t>(v)));
    for (const AttributeEntry& y : entries) {
      if (!Observed(y)) continue;
      for (const AttributeEntry& x : entries) {
        if (!Observed(x) || !(y.attr < x.attr)) continue;
        pairs[PathKey::Inner(y.attr, x.attr)].push_back({y.value, x.value});
      }
    }
  }
  return pairs;
}

double AttrScale(const AttributeTable& attrs, AttrTypeId a) {
  const AttrTypeSummary& s = attrs.summary(a);
  if (s.count == 0) {
    throw DataError("attribute type '" + attrs.types().Label(a) +
                    "' has no observed values");
  }
  const double range = s.range();
  return range > 0.0 ? range : std::max(std::abs(s.mean), 1.0);
}

bool IsExcluded(const PathKey& key, const AdmissionConfig& config,
                const KnowledgeGraph& graph, const AttributeTable& attrs) {
  const std::string& dep = attrs.types().Label(key.dep);
  const std::string& indep = attrs.types().Label(key.indep);
  for (const Exclusion& ex : config.exclusions) {
    const bool attrs_match = (ex.attr_a == dep && ex.attr_b == indep) ||
                             (ex.attr_a == indep && ex.attr_b == dep);
    if (!attrs_match) continue;
    if (!ex.relation) return true;
    if (key.is_inner()) {
      if (*ex.relation == kInnerLabel) return true;
    } else if (*ex.relation == graph.relations().Label(key.link->relation)) {
      return true;
    }
  }
  return false;
}

ModelRegistry BuildRegistry(const KnowledgeGraph& graph,
                            const AttributeTable& attrs,
                            const AdmissionConfig& config) {
  ModelRegistry registry(config);
  RegistryStats& stats = registry.mutable_stats();
  for (const auto& [key, pairs] : CollectTrainingPairs(graph, attrs)) {
    if (IsExcluded(key, config, graph, attrs)) {
      ++stats.count(Rejection::kExcluded);
      continue;
    }
    if (pairs.size() < std::max<std::size_t>(config.min_support, 2)) {
      ++stats.count(Rejection::kInsufficientSupport);
      continue;
    }
    LineFit fit;
    try {
      fit = FitSimpleRegression(pairs);
    } catch (const DegenerateRegressor&) {
      ++stats.count(Rejection::kDegenerateRegressor);
      continue;
    }
    ++stats.fitted;
    if (fit.fit.r2 < config.r2_min) {
      ++stats.count(Rejection::kLowR2);
      continue;
    }
    const double dep_scale = AttrScale(attrs, key.dep);
    const double indep_scale = AttrScale(attrs, key.indep);
    const RegressionModel model = MakeModel(
        key, fit, config.variance_floor_scale * dep_scale * dep_scale);
    registry.Insert(model);
    ++stats.admitted_forward;
    try {
      registry.Insert(DeriveReverse(
          model, config.eta_min_scale * dep_scale / indep_scale));
      ++stats.derived_reverse;
    } catch (const NonInvertibleSlope&) {
      ++stats.count(Rejection::kNonInvertible);
    }
  }
  return registry;
}

std::size_t CountPaths(const KnowledgeGraph& graph,
                       const ModelRegistry& registry,
                       const AttributeTable& attrs) {
  std::size_t paths = 0;
  for (std::size_t i = 0; i < graph.num_entities(); ++i) {
    const EntityId v(static_cast<std::uint32_t>(i));
    const auto targets = attrs.EntriesOf(v);
    if (targets.empty()) continue;
    for (const AttributeEntry& y : targets) {
      for (const Neighbor& nb : graph.neighbors(v)) {
        for (const AttributeEntry& x : attrs.EntriesOf(nb.node)) {
          if (registry.Find(PathKey::Relational(y.attr, x.attr, nb.link))) {
            ++paths;
          }
        }
      }
      for (const AttributeEntry& x : targets) {
        if (x.attr == y.attr) continue;
        if (registry.Find(PathKey::Inner(y.attr, x.attr))) ++paths;
      }
    }
  }
  return paths;
}

}  // namespace mrap
