// Copyright 2026 The qens Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qens/majorize.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qens/errors.hpp"

using namespace qens;

namespace {

ProbVector pv(std::vector<double> w) { return ProbVector(std::move(w)); }

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::vector<double> mul(const RealMatrix& d, std::span<const double> y) {
  std::vector<double> out(static_cast<std::size_t>(d.rows()), 0.0);
  for (Eigen::Index i = 0; i < d.rows(); ++i)
    for (Eigen::Index j = 0; j < d.cols(); ++j) out[i] += d(i, j) * y[j];
  return out;
}

}  // namespace

TEST(ProbVector, RejectsBadWeights) {
  EXPECT_THROW(pv({0.6, 0.6}), ValidationError);
  EXPECT_THROW(pv({1.5, -0.5}), ValidationError);
  EXPECT_THROW(pv({}), ValidationError);
  EXPECT_THROW(pv({std::nan(""), 1.0}), ValidationError);
}

TEST(ProbVector, ClipsTinyNegatives) {
  const ProbVector p = pv({1.0 + 5e-10, -5e-10});
  EXPECT_EQ(p[1], 0.0);
}

TEST(ProbVector, UniformAndPadded) {
  const ProbVector u = ProbVector::uniform(4);
  for (double w : u.weights()) EXPECT_DOUBLE_EQ(w, 0.25);
  const ProbVector p = pv({0.5, 0.5}).padded(4);
  EXPECT_EQ(p.size(), 4u);
  EXPECT_EQ(p[3], 0.0);
}

TEST(IsMajorizedBy, Examples) {
  EXPECT_TRUE(is_majorized_by(ProbVector::uniform(3), pv({0.5, 0.25, 0.25})));
  EXPECT_TRUE(is_majorized_by(pv({0.2, 0.3, 0.5}), pv({0.5, 0.2, 0.3})));
  EXPECT_FALSE(is_majorized_by(pv({0.6, 0.4}), pv({0.5, 0.5})));
}

TEST(IsMajorizedBy, ZeroPaddingBothWays) {
  // (1/3, 1/3, 1/3) ≺ (1/2, 1/2) after padding; not conversely.
  EXPECT_TRUE(is_majorized_by(ProbVector::uniform(3), ProbVector::uniform(2)));
  EXPECT_FALSE(is_majorized_by(ProbVector::uniform(2), ProbVector::uniform(3)));
  EXPECT_TRUE(is_majorized_by(pv({1.0}), pv({1.0, 0.0, 0.0})));
}

TEST(CheckMajorization, ReportsFirstFailingPartialSum) {
  const MajorizationCheck c = check_majorization(pv({0.75, 0.25}), pv({0.5, 0.5}));
  EXPECT_FALSE(c.holds);
  EXPECT_EQ(c.failing_k, 1u);
  EXPECT_DOUBLE_EQ(c.lhs, 0.75);
  EXPECT_DOUBLE_EQ(c.rhs, 0.5);
  EXPECT_EQ(c.reason(), "majorization violated at k=1: 0.75 > 0.5");
}

TEST(RequireMajorized, ThrowsWithFields) {
  try {
    require_majorized(pv({0.75, 0.25}), pv({0.5, 0.5}));
    FAIL();
  } catch (const MajorizationError& e) {
    EXPECT_EQ(e.k(), 1u);
    EXPECT_STREQ(e.what(), "majorization violated at k=1: 0.75 > 0.5");
  }
}

TEST(IsMajorizedBy, PropertyAgreesWithThresholdOracle) {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 2000; ++rep) {
    const std::size_t nx = 1 + rng() % 7, ny = 1 + rng() % 7;
    const auto x = oracle::random_probs(nx, rng, 0.2);
    const auto y = oracle::random_probs(ny, rng, 0.2);
    ASSERT_EQ(is_majorized_by(pv(x), pv(y), 1e-12), oracle::majorized_by_threshold(x, y, 1e-12));
  }
}

TEST(IsMajorizedBy, PropertyMixingProducesMajorized) {
  std::mt19937_64 rng(18);
  for (int rep = 0; rep < 500; ++rep) {
    const auto y = oracle::random_probs(2 + rng() % 10, rng);
    const auto x = oracle::random_t_mix(y, rng() % 8, rng);
    ASSERT_TRUE(is_majorized_by(pv(x), pv(y)));
    ASSERT_TRUE(is_majorized_by(ProbVector::uniform(y.size()), pv(y)));
    ASSERT_TRUE(is_majorized_by(pv(y), pv(y)));
  }
}

TEST(TTransformChain, TwoPoint) {
  const TChain c = t_transform_chain(pv({0.5, 0.5}), pv({1.0, 0.0}));
  ASSERT_EQ(c.transforms.size(), 1u);
  EXPECT_EQ(c.transforms[0].i, 0u);
  EXPECT_EQ(c.transforms[0].k, 1u);
  EXPECT_DOUBLE_EQ(c.transforms[0].t, 0.5);
  const ProbVector out = apply_t_chain(c, pv({1.0, 0.0}));
  EXPECT_DOUBLE_EQ(out[0], 0.5);
  EXPECT_DOUBLE_EQ(out[1], 0.5);
}

TEST(TTransformChain, ThreePointMatchesHandComputedChain) {
  const ProbVector x = pv({0.4, 0.35, 0.25}), y = pv({0.6, 0.3, 0.1});
  const TChain c = t_transform_chain(x, y);
  ASSERT_EQ(c.transforms.size(), 2u);
  EXPECT_EQ(c.transforms[0].i, 0u);
  EXPECT_EQ(c.transforms[0].k, 1u);
  EXPECT_NEAR(c.transforms[0].t, 1.0 / 3.0, 1e-15);
  EXPECT_EQ(c.transforms[1].i, 1u);
  EXPECT_EQ(c.transforms[1].k, 2u);
  EXPECT_NEAR(c.transforms[1].t, 0.625, 1e-15);
  EXPECT_LE(max_abs_diff(apply_t_chain(c, y).weights(), x.weights()), 1e-15);
}

TEST(TTransformChain, IdentityIsEmpty) {
  const ProbVector y = pv({0.2, 0.5, 0.3});
  const TChain c = t_transform_chain(y, y);
  EXPECT_TRUE(c.transforms.empty());
  EXPECT_EQ(apply_t_chain(c, y).vec(), y.vec());
}

TEST(TTransformChain, RejectsNonMajorized) {
  try {
    t_transform_chain(pv({0.6, 0.4}), pv({0.5, 0.5}));
    FAIL();
  } catch (const MajorizationError& e) {
    EXPECT_EQ(e.k(), 1u);
    EXPECT_NEAR(e.lhs(), 0.6, 1e-15);
    EXPECT_NEAR(e.rhs(), 0.5, 1e-15);
  }
}

TEST(TTransformChain, PropertyRoundTripAndLength) {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 400; ++rep) {
    const std::size_t n = 1 + rng() % 20;
    const auto y = oracle::random_probs(n, rng, 0.15);
    auto x = oracle::random_t_mix(y, rng() % 30, rng);
    if (rng() % 4 == 0) x.resize(n + rng() % 3, 0.0);  // longer x, padded y
    const TChain c = t_transform_chain(pv(x), pv(y));
    ASSERT_LE(c.transforms.size(), c.dim == 0 ? 0 : c.dim - 1);
    for (const TTransform& t : c.transforms) {
      ASSERT_GE(t.t, 0.0);
      ASSERT_LE(t.t, 1.0);
    }
    const ProbVector out = apply_t_chain(c, pv(y));
    ASSERT_EQ(out.size(), x.size());
    ASSERT_LE(max_abs_diff(out.weights(), x), 1e-10);
    const RealMatrix d = c.matrix();
    ASSERT_LE(doubly_stochastic_defect(d), 1e-12);
    ASSERT_LE(max_abs_diff(mul(d, pv(y).padded(c.dim).weights()), x), 1e-10);
  }
}

TEST(ApplyTChain, EmptyAndAveraging) {
  TChain empty;
  empty.dim = 2;
  empty.x_len = 2;
  empty.y_len = 2;
  empty.source_permutation = {0, 1};
  empty.target_permutation = {0, 1};
  EXPECT_EQ(apply_t_chain(empty, pv({0.3, 0.7})).vec(), (std::vector<double>{0.3, 0.7}));

  std::vector<double> v = {1.0, 0.0};
  TTransform{0, 1, 0.5}.apply(v);
  EXPECT_EQ(v, (std::vector<double>{0.5, 0.5}));
  const RealMatrix m = TTransform{0, 2, 0.25}.matrix(3);
  EXPECT_DOUBLE_EQ(m(0, 0), 0.25);
  EXPECT_DOUBLE_EQ(m(0, 2), 0.75);
  EXPECT_DOUBLE_EQ(m(1, 1), 1.0);
}

TEST(ApplyTChain, RejectsLongerY) {
  const TChain c = t_transform_chain(pv({0.5, 0.5}), pv({1.0, 0.0}));
  EXPECT_THROW(apply_t_chain(c, pv({0.5, 0.25, 0.25})), ValidationError);
}

TEST(HornOrthogonal, TwoPoint) {
  const HornWitness h = horn_orthogonal(pv({0.5, 0.5}), pv({1.0, 0.0}));
  const double r = std::sqrt(0.5);
  RealMatrix w(2, 2);
  w << r, -r, r, r;
  EXPECT_LE((h.W - w).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE((h.D - RealMatrix::Constant(2, 2, 0.5)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(HornOrthogonal, IdentityCase) {
  const HornWitness h = horn_orthogonal(pv({1.0, 0.0, 0.0}), pv({1.0, 0.0, 0.0}));
  EXPECT_EQ(h.W, RealMatrix::Identity(3, 3));
}

TEST(HornOrthogonal, ThreePoint) {
  const ProbVector x = pv({0.4, 0.35, 0.25}), y = pv({0.6, 0.3, 0.1});
  const HornWitness h = horn_orthogonal(x, y);
  EXPECT_LE((h.W * h.W.transpose() - RealMatrix::Identity(3, 3)).norm(), 1e-10);
  EXPECT_LE((h.D - h.W.cwiseAbs2()).norm(), 0.0);
  EXPECT_LE(max_abs_diff(mul(h.D, y.weights()), x.weights()), 1e-12);
}

TEST(HornOrthogonal, PropertyOrthogonalAndMaps) {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t n = 1 + rng() % 24;
    const auto y = oracle::random_probs(n, rng, 0.2);
    const auto x = oracle::random_t_mix(y, rng() % 40, rng);
    const HornWitness h = horn_orthogonal(pv(x), pv(y));
    const auto m = static_cast<Eigen::Index>(n);
    ASSERT_LE((h.W * h.W.transpose() - RealMatrix::Identity(m, m)).norm(), 1e-10);
    ASSERT_LE(max_abs_diff(mul(h.D, y), x), 1e-9);
    ASSERT_LE(h.chain.transforms.size(), n - 1);
  }
}

TEST(UnitaryToStochastic, Examples) {
  EXPECT_EQ(unitary_to_stochastic(ComplexMatrix::Identity(3, 3)), RealMatrix::Identity(3, 3));
  ComplexMatrix h(2, 2);
  const double r = std::sqrt(0.5);
  h << r, r, r, -r;
  EXPECT_LE((unitary_to_stochastic(h) - RealMatrix::Constant(2, 2, 0.5)).norm(), 1e-15);
  ComplexMatrix ph = ComplexMatrix::Zero(2, 2);
  ph(0, 0) = std::polar(1.0, 0.3);
  ph(1, 1) = std::polar(1.0, -2.0);
  EXPECT_LE((unitary_to_stochastic(ph) - RealMatrix::Identity(2, 2)).norm(), 1e-15);
  EXPECT_THROW(unitary_to_stochastic(ComplexMatrix::Constant(2, 2, 1.0)), ValidationError);
}

TEST(UnitaryToStochastic, PropertyDoublyStochasticAndMajorizes) {
  Rng rng(41);
  std::mt19937_64 prng(42);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 1 + prng() % 12;
    const RealMatrix d = unitary_to_stochastic(random_unitary(n, rng));
    ASSERT_LE(doubly_stochastic_defect(d), 1e-10);
    const auto y = oracle::random_probs(n, prng);
    ASSERT_TRUE(is_majorized_by(pv(mul(d, y)), pv(y), 1e-10));
  }
}

TEST(SchurValue, Examples) {
  const std::vector<double> a = {1.0, 0.0}, b = {0.5, 0.5}, c = {0.7, 0.3};
  EXPECT_EQ(schur_value(SchurFunction::kNegEntropy, a), 0.0);
  EXPECT_DOUBLE_EQ(schur_value(SchurFunction::kPowerSum, b, 2.0), 0.5);
  EXPECT_DOUBLE_EQ(schur_value("neg_max", c), -0.7);
  EXPECT_DOUBLE_EQ(schur_value("neg_product", b), -0.25);
  EXPECT_NEAR(schur_value("neg_entropy", b), std::log(0.5), 1e-15);
  EXPECT_THROW(schur_value("nope", c), ValidationError);
  EXPECT_THROW(schur_value(SchurFunction::kPowerSum, c, 0.5), ValidationError);
  EXPECT_THROW(schur_value(SchurFunction::kPowerSum, c), ValidationError);
}

TEST(SchurInequalities, EqualityWhenIdentical) {
  const ProbVector y = pv({0.5, 0.3, 0.2});
  const SchurReport r = check_schur_inequalities(y, y);
  EXPECT_TRUE(r.all_hold);
  for (const SchurComparison& c : r.comparisons) EXPECT_EQ(c.fx, c.fy) << c.name;
}

TEST(SchurInequalities, RejectsNonMajorized) {
  EXPECT_THROW(check_schur_inequalities(pv({0.6, 0.4}), pv({0.5, 0.5})), MajorizationError);
}

TEST(SchurInequalities, NegMaxIsCheckedAsConcave) {
  const SchurReport r = check_schur_inequalities(pv({0.5, 0.5}), pv({1.0, 0.0}));
  bool found = false;
  for (const SchurComparison& c : r.comparisons)
    if (c.name == "neg_max") {
      found = true;
      EXPECT_FALSE(c.convex);
      EXPECT_DOUBLE_EQ(c.fx, -0.5);
      EXPECT_DOUBLE_EQ(c.fy, -1.0);
      EXPECT_TRUE(c.holds);
    }
  EXPECT_TRUE(found);
  EXPECT_TRUE(r.all_hold);
}

TEST(SchurInequalities, PropertyAllHoldForMajorizedPairs) {
  std::mt19937_64 rng(55);
  for (int rep = 0; rep < 300; ++rep) {
    const auto y = oracle::random_probs(1 + rng() % 10, rng, 0.1);
    const auto x = oracle::random_t_mix(y, rng() % 10, rng);
    const SchurReport r = check_schur_inequalities(pv(x), pv(y));
    for (const SchurComparison& c : r.comparisons) ASSERT_TRUE(c.holds) << c.name;
    ASSERT_GE(r.comparisons.size(), 6 + convex_scalar_registry().size());
  }
}

TEST(CompareSchur, DetectsViolation) {
  // (1, 0) is not majorized by (0.5, 0.5); every convex comparison flips.
  const std::vector<double> x = {1.0, 0.0}, y = {0.5, 0.5};
  const SchurReport r = compare_schur(x, y);
  EXPECT_FALSE(r.all_hold);
}
