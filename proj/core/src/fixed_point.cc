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

#include "mrap/fixed_point.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mrap/errors.h"

namespace mrap {

Predictions FixedPointOracle(const KnowledgeGraph& graph,
                             const AttributeTable& attrs,
                             const ModelRegistry& registry,
                             const PropagationConfig& config) {
  const std::vector<double> init = InitialValues(attrs, config.init_policy);

  // Column of each unknown, or npos for constants.
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::vector<std::size_t> column(attrs.size(), npos);
  std::vector<std::size_t> unknowns;
  std::vector<std::vector<IncomingPath>> incoming(attrs.size());
  for (std::size_t e = 0; e < attrs.size(); ++e) {
    if (attrs.entry(e).status == Status::kObserved) continue;
    incoming[e] = IncomingPaths(graph, attrs, registry, e, config);
    if (incoming[e].empty()) continue;
    column[e] = unknowns.size();
    unknowns.push_back(e);
  }
  const std::size_t n = unknowns.size();
  if (n > kMaxOracleUnknowns) {
    throw InvalidArgument("fixed-point oracle limited to " +
                          std::to_string(kMaxOracleUnknowns) + " unknowns");
  }

  // Row i: y_i - sum_j (w eta / Q) y_j = sum (w tau + w eta x_const) / Q.
  std::vector<double> a(n * n, 0.0);
  std::vector<double> b(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t e = unknowns[i];
    double q = 0.0;
    for (const IncomingPath& p : incoming[e]) q += p.model->weight;
    a[i * n + i] = 1.0;
    for (const IncomingPath& p : incoming[e]) {
      const double w = p.model->weight / q;
      b[i] += w * p.model->tau;
      if (column[p.source] != npos) {
        a[i * n + column[p.source]] -= w * p.model->eta;
      } else {
        b[i] += w * p.model->eta * init[p.source];
      }
    }
  }

  // Gaussian elimination with partial pivoting.
  std::vector<std::size_t> dependent;
  double scale = 0.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  const double tiny = 1e-13 * std::max(scale, 1.0);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t r = k + 1; r < n; ++r) {
      if (std::abs(a[r * n + k]) > std::abs(a[pivot * n + k])) pivot = r;
    }
    if (std::abs(a[pivot * n + k]) <= tiny) {
      dependent.push_back(k);
      continue;
    }
    if (pivot != k) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a[k * n + c], a[pivot * n + c]);
      }
      std::swap(b[k], b[pivot]);
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      const double f = a[r * n + k] / a[k * n + k];
      if (f == 0.0) continue;
      for (std::size_t c = k; c < n; ++c) a[r * n + c] -= f * a[k * n + c];
      b[r] -= f * b[k];
    }
  }
  if (!dependent.empty()) {
    std::string names;
    for (std::size_t k : dependent) {
      const AttributeEntry& entry = attrs.entry(unknowns[k]);
      if (!names.empty()) names += ", ";
      names += graph.entities().Label(entry.entity) + "/" +
               attrs.types().Label(entry.attr);
    }
    throw SingularSystem("fixed-point system is singular in: " + names);
  }
  std::vector<double> y(n, 0.0);
  for (std::size_t k = n; k-- > 0;) {
    double s = b[k];
    for (std::size_t c = k + 1; c < n; ++c) s -= a[k * n + c] * y[c];
    y[k] = s / a[k * n + k];
  }

  Predictions out;
  for (std::size_t e = 0; e < attrs.size(); ++e) {
    if (attrs.entry(e).status == Status::kObserved) continue;
    out.emplace(attrs.entry(e).key(),
                column[e] != npos ? y[column[e]] : init[e]);
  }
  return out;
}

}  // namespace mrap
