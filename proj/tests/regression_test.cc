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

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "mrap/errors.h"
#include "mrap/model_registry.h"
#include "mrap/regression.h"
#include "support/oracles.h"
#include "support/synthetic.h"

namespace mrap {
namespace {

const PathKey kKey = PathKey::Relational(
    AttrTypeId{0}, AttrTypeId{1},
    OrientedRelation{RelationId{0}, Direction::kForward});

RegressionModel Model(double eta, double tau, double sigma2) {
  RegressionModel m;
  m.key = kKey;
  m.eta = eta;
  m.tau = tau;
  m.sigma2 = sigma2;
  m.weight = 1.0 / sigma2;
  return m;
}

std::vector<Pair> RandomPairs(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size(2, 50);
  std::uniform_real_distribution<double> v(-1e3, 1e3), slope(-5, 5);
  std::normal_distribution<double> noise(0, 10);
  const double eta = slope(rng), tau = v(rng);
  std::vector<Pair> pairs(size(rng));
  for (Pair& p : pairs) {
    p.x = v(rng);
    p.y = eta * p.x + tau + noise(rng);
  }
  return pairs;
}

TEST(FitTest, ExactLine) {
  const std::vector<Pair> pairs = {{3, 1}, {5, 2}, {7, 3}};
  const LineFit f = FitSimpleRegression(pairs);
  EXPECT_DOUBLE_EQ(f.eta, 2.0);
  EXPECT_DOUBLE_EQ(f.tau, 1.0);
  EXPECT_NEAR(f.sigma2, 0.0, 1e-24);
  EXPECT_EQ(f.fit.support, 3u);
  EXPECT_DOUBLE_EQ(f.fit.mu_x, 2.0);
  EXPECT_DOUBLE_EQ(f.fit.mu_y, 5.0);
  EXPECT_DOUBLE_EQ(f.fit.r2, 1.0);
}

TEST(FitTest, MatchesNormalEquationsOnSmallSample) {
  const std::vector<Pair> pairs = {{0, 0}, {1, 1}, {3, 2}};
  const testing::ReferenceFit ref = testing::NormalEquationsFit(pairs);
  const LineFit f = FitSimpleRegression(pairs);
  EXPECT_NEAR(f.eta, static_cast<double>(ref.eta), 1e-15);
  EXPECT_NEAR(f.tau, static_cast<double>(ref.tau), 1e-15);
  EXPECT_NEAR(f.sigma2, static_cast<double>(ref.sigma2), 1e-15);
  EXPECT_NEAR(f.eta, 1.5, 1e-15);
  EXPECT_NEAR(f.tau, -1.0 / 6.0, 1e-15);
  EXPECT_NEAR(f.sigma2, 1.0 / 18.0, 1e-15);
}

TEST(FitTest, Errors) {
  const std::vector<Pair> one = {{1, 1}};
  EXPECT_THROW(FitSimpleRegression(one), InsufficientSupport);
  EXPECT_THROW(FitSimpleRegression({}), InsufficientSupport);
  const std::vector<Pair> flat = {{1, 4}, {2, 4}, {3, 4}};
  EXPECT_THROW(FitSimpleRegression(flat), DegenerateRegressor);
}

TEST(FitTest, ConstantResponseHasUnitR2) {
  const std::vector<Pair> pairs = {{4, 1}, {4, 2}, {4, 3}};
  const LineFit f = FitSimpleRegression(pairs);
  EXPECT_EQ(f.eta, 0.0);
  EXPECT_EQ(f.tau, 4.0);
  EXPECT_EQ(f.fit.r2, 1.0);
}

TEST(FitTest, SameTypeDatesAcrossParentRelationHaveUnitSlope) {
  const DatasetBundle b = testing::GenealogyInstance(3, 3000);
  const AttrTypeId birth = *b.attrs.types().Find("date_of_birth");
  const PathKey key = PathKey::Relational(
      birth, birth,
      {*b.graph.relations().Find("parent_of"), Direction::kForward});
  const LineFit f =
      FitSimpleRegression(ExtractPairs(b.graph, b.attrs, key));
  EXPECT_NEAR(f.eta, 1.0, 0.05);
  EXPECT_NEAR(f.tau + (f.eta - 1.0) * f.fit.mu_x, 30.0, 2.0);
}

TEST(MakeModelTest, WeightIsInverseVarianceAndFloored) {
  LineFit f;
  f.eta = 2;
  f.tau = 1;
  f.sigma2 = 0.25;
  const RegressionModel m = MakeModel(kKey, f, 1e-6);
  EXPECT_EQ(m.sigma2, 0.25);
  EXPECT_EQ(m.weight, 4.0);
  f.sigma2 = 0.0;
  const RegressionModel floored = MakeModel(kKey, f, 1e-6);
  EXPECT_EQ(floored.sigma2, 1e-6);
  EXPECT_DOUBLE_EQ(floored.weight, 1e6);
}

TEST(DeriveReverseTest, Examples) {
  const RegressionModel a = DeriveReverse(Model(2, 4, 1), 1e-9);
  EXPECT_DOUBLE_EQ(a.eta, 0.5);
  EXPECT_DOUBLE_EQ(a.tau, -2.0);
  EXPECT_DOUBLE_EQ(a.weight, 4.0);
  EXPECT_DOUBLE_EQ(a.sigma2, 0.25);
  const RegressionModel b = DeriveReverse(Model(1, 0, 2), 1e-9);
  EXPECT_DOUBLE_EQ(b.eta, 1.0);
  EXPECT_DOUBLE_EQ(b.tau, 0.0);
  EXPECT_DOUBLE_EQ(b.weight, 0.5);
  const RegressionModel c = DeriveReverse(Model(-0.5, 1, 4), 1e-9);
  EXPECT_DOUBLE_EQ(c.eta, -2.0);
  EXPECT_DOUBLE_EQ(c.tau, 2.0);
  EXPECT_DOUBLE_EQ(c.weight, 0.0625);
}

TEST(DeriveReverseTest, KeyAndSummary) {
  RegressionModel m = Model(2, 4, 1);
  m.fit.mu_x = 3;
  m.fit.mu_y = 10;
  const RegressionModel r = DeriveReverse(m, 1e-9);
  EXPECT_EQ(r.key, kKey.Reversed());
  EXPECT_EQ(r.key.dep, kKey.indep);
  EXPECT_EQ(r.key.link->direction, Direction::kReverse);
  EXPECT_TRUE(r.fit.derived_reverse);
  EXPECT_EQ(r.fit.mu_x, 10.0);
  EXPECT_EQ(r.fit.mu_y, 3.0);
  EXPECT_EQ(r.key.Reversed(), kKey);
}

TEST(DeriveReverseTest, NonInvertibleSlope) {
  EXPECT_THROW(DeriveReverse(Model(0, 1, 1), 1e-9), NonInvertibleSlope);
  EXPECT_THROW(DeriveReverse(Model(1e-12, 1, 1), 1e-9), NonInvertibleSlope);
  EXPECT_NO_THROW(DeriveReverse(Model(-1e-8, 1, 1), 1e-9));
}

TEST(PredictTest, Examples) {
  EXPECT_EQ(Predict(Model(2, 1, 1), 3), 7.0);
  EXPECT_EQ(Predict(Model(1, 0, 1), 42), 42.0);
  const std::vector<Pair> pairs = {{0, 0}, {1, 1}, {3, 2}};
  RegressionModel m = MakeModel(kKey, FitSimpleRegression(pairs), 1e-12);
  EXPECT_NEAR(Predict(m, 2), 17.0 / 6.0, 1e-14);
}

TEST(PathKeyTest, InnerAndCrossClassification) {
  EXPECT_THROW(PathKey::Inner(AttrTypeId{1}, AttrTypeId{1}), InvalidArgument);
  const PathKey inner = PathKey::Inner(AttrTypeId{1}, AttrTypeId{0});
  EXPECT_TRUE(inner.is_inner());
  EXPECT_TRUE(inner.is_cross());
  EXPECT_EQ(inner.Reversed(), PathKey::Inner(AttrTypeId{0}, AttrTypeId{1}));
  EXPECT_TRUE(kKey.is_cross());
  const PathKey same = PathKey::Relational(
      AttrTypeId{0}, AttrTypeId{0}, {RelationId{0}, Direction::kForward});
  EXPECT_FALSE(same.is_cross());
}

TEST(RegressionPropertyTest, MatchesNormalEquations) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 500; ++trial) {
    const std::vector<Pair> pairs = RandomPairs(rng);
    const LineFit f = FitSimpleRegression(pairs);
    const testing::ReferenceFit ref = testing::NormalEquationsFit(pairs);
    ASSERT_NEAR(f.eta, static_cast<double>(ref.eta),
                1e-9 * std::max(1.0L, std::fabs(ref.eta)));
    ASSERT_NEAR(f.tau, static_cast<double>(ref.tau),
                1e-9 * std::max(1e3L, std::fabs(ref.tau)));
    ASSERT_NEAR(f.sigma2, static_cast<double>(ref.sigma2),
                1e-9 * std::max(1.0L, ref.sigma2));
  }
}

TEST(RegressionPropertyTest, ResidualMeanIsZero) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const std::vector<Pair> pairs = RandomPairs(rng);
    const LineFit f = FitSimpleRegression(pairs);
    long double sum = 0, scale = 0;
    for (const Pair& p : pairs) {
      sum += p.y - (f.eta * p.x + f.tau);
      scale += std::fabs(p.y);
    }
    ASSERT_LE(std::fabs(sum / pairs.size()),
              1e-9 * std::max(1.0L, scale / pairs.size()));
  }
}

TEST(RegressionPropertyTest, ReverseInvolutionAndRoundTrip) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> x(-1e3, 1e3);
  for (int trial = 0; trial < 500; ++trial) {
    const RegressionModel m =
        MakeModel(kKey, FitSimpleRegression(RandomPairs(rng)), 1e-12);
    if (std::fabs(m.eta) < 1e-3) continue;
    const RegressionModel r = DeriveReverse(m, 1e-9);
    const RegressionModel rr = DeriveReverse(r, 1e-9);
    ASSERT_NEAR(rr.eta, m.eta, 1e-12 * std::fabs(m.eta));
    ASSERT_NEAR(rr.tau, m.tau, 1e-12 * std::max(1.0, std::fabs(m.tau)));
    ASSERT_NEAR(rr.sigma2, m.sigma2, 1e-12 * m.sigma2);
    ASSERT_EQ(rr.key, m.key);
    const double v = x(rng);
    ASSERT_NEAR(Predict(r, Predict(m, v)), v, 1e-9 * std::max(1.0, std::fabs(v)));
  }
}

TEST(RegressionPropertyTest, WeightConsistency) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 500; ++trial) {
    const RegressionModel m =
        MakeModel(kKey, FitSimpleRegression(RandomPairs(rng)), 1e-12);
    ASSERT_DOUBLE_EQ(m.weight, 1.0 / m.sigma2);
    if (m.eta == 0) continue;
    const RegressionModel r = DeriveReverse(m, 1e-12);
    ASSERT_DOUBLE_EQ(r.weight, m.eta * m.eta / m.sigma2);
    ASSERT_DOUBLE_EQ(r.weight, 1.0 / r.sigma2);
  }
}

TEST(RegressionPropertyTest, ScaleEquivariance) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Pair> pairs = RandomPairs(rng);
    const double c = scale(rng);
    const LineFit f = FitSimpleRegression(pairs);
    for (Pair& p : pairs) p.x *= c;
    const LineFit g = FitSimpleRegression(pairs);
    ASSERT_NEAR(g.eta, f.eta / c, 1e-9 * std::max(1.0, std::fabs(f.eta / c)));
    ASSERT_NEAR(g.sigma2, f.sigma2, 1e-9 * std::max(1.0, f.sigma2));
    for (const Pair& p : pairs) {
      const double a = g.eta * p.x + g.tau;
      const double b = f.eta * (p.x / c) + f.tau;
      ASSERT_NEAR(a, b, 1e-9 * std::max(1.0, std::fabs(b)));
    }
  }
}

TEST(RegressionPropertyTest, R2WithinUnitInterval) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 500; ++trial) {
    const LineFit f = FitSimpleRegression(RandomPairs(rng));
    ASSERT_GE(f.fit.r2, 0.0);
    ASSERT_LE(f.fit.r2, 1.0);
  }
}

}  // namespace
}  // namespace mrap
