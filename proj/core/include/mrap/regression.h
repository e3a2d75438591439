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

#ifndef MRAP_REGRESSION_H_
#define MRAP_REGRESSION_H_

#include <cstddef>
#include <optional>
#include <span>

#include "mrap/ids.h"

namespace mrap {

// Identifies one regression function: predict `dep` from `indep`, either
// across a relation incidence (`link` set) or within a node (`link` empty).
struct PathKey {
  AttrTypeId dep;
  AttrTypeId indep;
  std::optional<OrientedRelation> link;

  static PathKey Relational(AttrTypeId dep, AttrTypeId indep,
                            OrientedRelation link) {
    return {dep, indep, link};
  }
  // Throws InvalidArgument when dep == indep.
  static PathKey Inner(AttrTypeId dep, AttrTypeId indep);

  bool is_inner() const { return !link.has_value(); }
  bool is_cross() const { return dep != indep || is_inner(); }
  // Key of the same regression read in the opposite direction.
  PathKey Reversed() const;

  friend auto operator<=>(const PathKey&, const PathKey&) = default;
};

// A (dependent, independent) sample.
struct Pair {
  double y = 0.0;
  double x = 0.0;

  friend bool operator==(const Pair&, const Pair&) = default;
};

struct FitSummary {
  std::size_t support = 0;
  double mu_x = 0.0;
  double mu_y = 0.0;
  double r2 = 0.0;
  bool derived_reverse = false;
};

struct LineFit {
  double eta = 0.0;
  double tau = 0.0;
  double sigma2 = 0.0;
  FitSummary fit;
};

struct RegressionModel {
  PathKey key;
  double eta = 1.0;
  double tau = 0.0;
  double sigma2 = 1.0;
  double weight = 1.0;
  FitSummary fit;
};

// Ordinary least squares with a single regressor:
//   eta = sum((y - mu_y)(x - mu_x)) / sum((x - mu_x)^2)
//   tau = mean(y - eta x)
//   sigma2 = mean((y - eta x - tau)^2)
//   r2 = 1 - sigma2 / var(y), clamped to [0, 1] and 1 when var(y) == 0.
// Throws InsufficientSupport for fewer than two pairs and DegenerateRegressor
// when every x is identical.
LineFit FitSimpleRegression(std::span<const Pair> pairs);

// Builds a model from a fit, flooring sigma2 at `variance_floor` so that
// weight = 1 / sigma2 stays finite.
RegressionModel MakeModel(const PathKey& key, const LineFit& fit,
                          double variance_floor);

// The same linear relation solved for the regressor:
//   eta' = 1 / eta, tau' = -tau / eta, sigma2' = sigma2 / eta^2,
//   weight' = eta^2 / sigma2.
// Throws NonInvertibleSlope when |eta| < eta_min or eta == 0.
RegressionModel DeriveReverse(const RegressionModel& model, double eta_min);

inline double Predict(const RegressionModel& model, double x) {
  return model.eta * x + model.tau;
}

}  // namespace mrap

#endif  // MRAP_REGRESSION_H_
