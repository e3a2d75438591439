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

#include "mrap/evaluation.h"

#include <cmath>
#include <utility>

#include "mrap/errors.h"

namespace mrap {
namespace {

bool IsTarget(const AttributeEntry& e) { return e.status != Status::kObserved; }

double GlobalMean(const AttributeTable& attrs, AttrTypeId a) {
  const AttrTypeSummary& s = attrs.summary(a);
  if (s.count == 0) {
    throw DataError("attribute type '" + attrs.types().Label(a) +
                    "' has no observed values");
  }
  return s.mean;
}

}  // namespace

Predictions BaselineGlobal(const DatasetBundle& bundle) {
  Predictions out;
  for (const AttributeEntry& e : bundle.attrs.entries()) {
    if (IsTarget(e)) out.emplace(e.key(), GlobalMean(bundle.attrs, e.attr));
  }
  return out;
}

Predictions BaselineLocal(const DatasetBundle& bundle) {
  const AttributeTable& attrs = bundle.attrs;
  Predictions out;
  for (const AttributeEntry& e : attrs.entries()) {
    if (!IsTarget(e)) continue;
    double sum = 0.0;
    std::size_t count = 0;
    const Neighbor* previous = nullptr;
    for (const Neighbor& nb : bundle.graph.neighbors(e.entity)) {
      // Adjacency is sorted by node, so repeated incidences are adjacent.
      if (previous != nullptr && previous->node == nb.node) continue;
      previous = &nb;
      const auto index = attrs.Find({nb.node, e.attr});
      if (!index || attrs.entry(*index).status != Status::kObserved) continue;
      sum += attrs.entry(*index).value;
      ++count;
    }
    out.emplace(e.key(), count > 0 ? sum / static_cast<double>(count)
                                   : GlobalMean(attrs, e.attr));
  }
  return out;
}

EvalReport Evaluate(const Predictions& predictions, const DatasetBundle& truth,
                    Split split, std::string method, std::string setup) {
  const AttributeTable& attrs = truth.attrs;
  EvalReport report;
  report.method = std::move(method);
  report.setup = std::move(setup);

  const std::size_t num_types = attrs.num_types();
  std::vector<double> abs_sum(num_types, 0.0);
  std::vector<double> sq_sum(num_types, 0.0);
  std::vector<std::size_t> n(num_types, 0);
  std::vector<std::size_t> unpredicted(num_types, 0);
  for (std::size_t i = 0; i < attrs.size(); ++i) {
    if (truth.split[i] != split) continue;
    const AttributeEntry& e = attrs.entry(i);
    const std::size_t a = e.attr.index();
    double predicted;
    if (auto it = predictions.find(e.key()); it != predictions.end()) {
      predicted = it->second;
    } else {
      predicted = GlobalMean(attrs, e.attr);
      ++unpredicted[a];
    }
    const double err = predicted - truth.truth[i];
    abs_sum[a] += std::abs(err);
    sq_sum[a] += err * err;
    ++n[a];
  }
  for (std::size_t a = 0; a < num_types; ++a) {
    const AttrTypeId id(static_cast<std::uint32_t>(a));
    if (n[a] == 0) {
      report.warnings.push_back("attribute type '" + attrs.types().Label(id) +
                                "' has no " + SplitName(split) +
                                " entries; omitted");
      continue;
    }
    const double count = static_cast<double>(n[a]);
    report.rows.push_back({id, attrs.types().Label(id), abs_sum[a] / count,
                           std::sqrt(sq_sum[a] / count), n[a],
                           unpredicted[a]});
  }
  return report;
}

std::vector<EvalReport> AblationSuite(const DatasetBundle& bundle,
                                      const ModelRegistry& registry,
                                      const PropagationConfig& config,
                                      Split split, const std::string& setup) {
  struct Variant {
    const char* name;
    bool no_inner;
    bool no_cross;
  };
  const Variant variants[] = {
      {"MrAP", false, false},
      {"w/o Inner", true, false},
      {"w/o Cross", false, true},
  };
  std::vector<EvalReport> reports;
  for (const Variant& v : variants) {
    PropagationConfig cfg = config;
    cfg.no_inner = v.no_inner;
    cfg.no_cross = v.no_cross;
    const PropagationResult result = Run(bundle, registry, cfg);
    reports.push_back(Evaluate(ToPredictions(bundle.attrs, result), bundle,
                               split, v.name, setup));
  }
  return reports;
}

Differences ExportDifferences(const DatasetBundle& bundle, const PathKey& key) {
  Differences out;
  for (const Pair& p : ExtractPairs(bundle.graph, bundle.attrs, key)) {
    out.values.push_back(p.y - p.x);
  }
  if (out.values.empty()) {
    out.warnings.push_back("no observed pairs for the requested key");
    return out;
  }
  const double n = static_cast<double>(out.values.size());
  double sum = 0.0;
  for (double d : out.values) sum += d;
  out.mean = sum / n;
  double sq = 0.0;
  for (double d : out.values) sq += (d - out.mean) * (d - out.mean);
  out.stddev = std::sqrt(sq / n);
  return out;
}

}  // namespace mrap
