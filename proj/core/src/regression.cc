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

#include "mrap/regression.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "mrap/errors.h"

namespace mrap {

PathKey PathKey::Inner(AttrTypeId dep, AttrTypeId indep) {
  if (dep == indep) {
    throw InvalidArgument("inner regression needs two distinct attribute types");
  }
  return {dep, indep, std::nullopt};
}

PathKey PathKey::Reversed() const {
  PathKey r{indep, dep, std::nullopt};
  if (link) r.link = link->Reversed();
  return r;
}

LineFit FitSimpleRegression(std::span<const Pair> pairs) {
  if (pairs.size() < 2) {
    throw InsufficientSupport("regression needs at least 2 pairs, got " +
                              std::to_string(pairs.size()));
  }
  const double n = static_cast<double>(pairs.size());
  double sum_x = 0.0;
  double sum_y = 0.0;
  for (const Pair& p : pairs) {
    sum_x += p.x;
    sum_y += p.y;
  }
  const double mu_x = sum_x / n;
  const double mu_y = sum_y / n;

  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const Pair& p : pairs) {
    const double dx = p.x - mu_x;
    const double dy = p.y - mu_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) {
    throw DegenerateRegressor("regressor has zero variance");
  }

  LineFit out;
  out.eta = sxy / sxx;
  double residual_sum = 0.0;
  for (const Pair& p : pairs) residual_sum += p.y - out.eta * p.x;
  out.tau = residual_sum / n;

  double sq = 0.0;
  for (const Pair& p : pairs) {
    const double r = p.y - out.eta * p.x - out.tau;
    sq += r * r;
  }
  out.sigma2 = sq / n;

  out.fit.support = pairs.size();
  out.fit.mu_x = mu_x;
  out.fit.mu_y = mu_y;
  const double var_y = syy / n;
  out.fit.r2 = var_y > 0.0 ? std::clamp(1.0 - out.sigma2 / var_y, 0.0, 1.0)
                           : 1.0;
  return out;
}

RegressionModel MakeModel(const PathKey& key, const LineFit& fit,
                          double variance_floor) {
  RegressionModel m;
  m.key = key;
  m.eta = fit.eta;
  m.tau = fit.tau;
  m.sigma2 = std::max(fit.sigma2, variance_floor);
  m.weight = 1.0 / m.sigma2;
  m.fit = fit.fit;
  return m;
}

RegressionModel DeriveReverse(const RegressionModel& model, double eta_min) {
  if (model.eta == 0.0 || std::abs(model.eta) < eta_min) {
    throw NonInvertibleSlope("slope " + std::to_string(model.eta) +
                             " is too small to invert");
  }
  RegressionModel r;
  r.key = model.key.Reversed();
  r.eta = 1.0 / model.eta;
  r.tau = -model.tau / model.eta;
  r.sigma2 = model.sigma2 / (model.eta * model.eta);
  r.weight = model.eta * model.eta / model.sigma2;
  r.fit = model.fit;
  std::swap(r.fit.mu_x, r.fit.mu_y);
  r.fit.derived_reverse = true;
  return r;
}

}  // namespace mrap
