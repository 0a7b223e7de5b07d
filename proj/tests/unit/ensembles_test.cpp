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

#include "qens/ensembles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qens/errors.hpp"

using namespace qens;

namespace {

ComplexVector ket(std::initializer_list<Complex> a) {
  ComplexVector v(static_cast<Eigen::Index>(a.size()));
  Eigen::Index i = 0;
  for (Complex z : a) v[i++] = z;
  return v;
}

DensityMatrix half_identity() { return validate_density(ComplexMatrix::Identity(2, 2) * 0.5, 1e-9); }

DensityMatrix diag(std::vector<double> d) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(d.size()),
                                        static_cast<Eigen::Index>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return validate_density(m, 1e-9);
}

Ensemble ens(std::vector<std::pair<double, ComplexVector>> ms) {
  std::vector<EnsembleMember> out;
  for (auto& [w, s] : ms) out.push_back({w, s, false});
  return Ensemble(std::move(out));
}

/// Σ p_i ψ_i ψ_i† by explicit outer products.
ComplexMatrix density_oracle(const Ensemble& e) {
  ComplexMatrix r = ComplexMatrix::Zero(e.dim(), e.dim());
  for (const EnsembleMember& m : e.members())
    for (Eigen::Index i = 0; i < r.rows(); ++i)
      for (Eigen::Index j = 0; j < r.cols(); ++j) r(i, j) += m.weight * m.state[i] * std::conj(m.state[j]);
  return r;
}

const double kR = std::sqrt(0.5);

}  // namespace

TEST(Ensemble, Validation) {
  EXPECT_THROW(ens({{0.5, ket({1, 0})}, {0.6, ket({0, 1})}}), ValidationError);
  EXPECT_THROW(ens({{0.5, ket({1, 0})}, {0.5, ket({1, 1})}}), ValidationError);
  EXPECT_THROW(ens({{0.5, ket({1, 0})}, {0.5, ket({0, 0, 1})}}), ValidationError);
  EXPECT_THROW(ens({}), ValidationError);
}

TEST(DensityFromEnsemble, Examples) {
  EXPECT_LE(frobenius_distance(density_from_ensemble(ens({{1.0, ket({1, 0})}})).matrix(),
                               diag({1.0, 0.0}).matrix()),
            1e-15);
  EXPECT_LE(frobenius_distance(
                density_from_ensemble(ens({{0.5, ket({1, 0})}, {0.5, ket({0, 1})}})).matrix(),
                half_identity().matrix()),
            1e-15);
  ComplexMatrix expect(2, 2);
  expect << 0.75, 0.25, 0.25, 0.25;
  EXPECT_LE(frobenius_distance(
                density_from_ensemble(ens({{0.5, ket({1, 0})}, {0.5, ket({kR, kR})}})).matrix(),
                expect),
            1e-15);
}

TEST(IsCompatible, Examples) {
  EXPECT_TRUE(is_compatible(ProbVector({0.5, 0.5}), half_identity()));
  EXPECT_TRUE(is_compatible(ProbVector::uniform(3), half_identity()));
  EXPECT_FALSE(is_compatible(ProbVector({0.75, 0.25}), half_identity()));
  EXPECT_FALSE(is_compatible(ProbVector({1.0}), half_identity()));
}

TEST(SynthesizeEnsemble, EigenbasisCase) {
  const Ensemble e = synthesize_ensemble(half_identity(), ProbVector({0.5, 0.5}));
  ASSERT_EQ(e.size(), 2u);
  EXPECT_LE((e[0].state - ket({1, 0})).norm(), 1e-15);
  EXPECT_LE((e[1].state - ket({0, 1})).norm(), 1e-15);
}

TEST(SynthesizeEnsemble, ThreeStatesForQubit) {
  const DensityMatrix rho = half_identity();
  const Ensemble e = synthesize_ensemble(rho, ProbVector::uniform(3));
  ASSERT_EQ(e.size(), 3u);
  for (const EnsembleMember& m : e.members()) {
    EXPECT_NEAR(m.weight, 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(m.state.norm(), 1.0, 1e-12);
  }
  EXPECT_LE(frobenius_distance(density_oracle(e), rho.matrix()), 1e-10);
}

TEST(SynthesizeEnsemble, OverlapsFollowStochasticMatrix) {
  const DensityMatrix rho = diag({0.9, 0.1});
  const ProbVector p({0.5, 0.5});
  const Ensemble e = synthesize_ensemble(rho, p);
  const HornWitness h = horn_orthogonal(p, spectrum_vector(rho));
  const Spectrum s = rho.spectrum();
  for (std::size_t i = 0; i < 2; ++i) {
    double pi = 0.0;
    for (Eigen::Index j = 0; j < 2; ++j) {
      // p_i |⟨v_j|ψ_i⟩|² = D_ij λ_j
      const double ov = std::norm(s.vectors.col(j).dot(e[i].state));
      EXPECT_NEAR(p[i] * ov, h.D(i, j) * s.values[j], 1e-12);
      pi += h.D(i, j) * s.values[j];
    }
    EXPECT_NEAR(pi, p[i], 1e-12);
  }
}

TEST(SynthesizeEnsemble, ZeroWeightMembersAreSynthetic) {
  const DensityMatrix rho = diag({0.6, 0.4});
  const Ensemble e = synthesize_ensemble(rho, ProbVector({0.6, 0.0, 0.4}));
  ASSERT_EQ(e.size(), 3u);
  EXPECT_TRUE(e[1].synthetic);
  EXPECT_FALSE(e[0].synthetic);
  EXPECT_LE(frobenius_distance(density_oracle(e), rho.matrix()), 1e-12);
}

TEST(SynthesizeEnsemble, RejectsIncompatible) {
  try {
    synthesize_ensemble(half_identity(), ProbVector({0.75, 0.25}));
    FAIL();
  } catch (const MajorizationError& e) {
    EXPECT_STREQ(e.what(), "majorization violated at k=1: 0.75 > 0.5");
  }
}

TEST(SynthesizeEnsemble, PropertyRandomReconstruction) {
  std::mt19937_64 rng(77);
  for (int rep = 0; rep < 150; ++rep) {
    const std::size_t dim = 1 + rng() % 10;
    const std::size_t rank = 1 + rng() % dim;
    const DensityMatrix rho = random_density(dim, rank, rng());
    auto lam = spectrum_vector(rho).vec();
    auto p = oracle::random_t_mix(lam, rng() % 20, rng);
    p.resize(p.size() + rng() % 4, 0.0);
    std::shuffle(p.begin(), p.end(), rng);
    const ProbVector pp(p, 1e-9);
    const Ensemble e = synthesize_ensemble(rho, pp);
    ASSERT_EQ(e.weights().vec(), pp.vec());
    ASSERT_LE(frobenius_distance(density_oracle(e), rho.matrix()), 1e-8);
    for (const EnsembleMember& m : e.members()) ASSERT_NEAR(m.state.norm(), 1.0, 1e-9);
    ASSERT_TRUE(verify_ensemble(e, rho, 1e-8).passed);
  }
}

TEST(UniformEnsemble, PureState) {
  const Ensemble e = uniform_ensemble(diag({1.0, 0.0}), 2);
  ASSERT_EQ(e.size(), 2u);
  for (const EnsembleMember& m : e.members()) {
    EXPECT_DOUBLE_EQ(m.weight, 0.5);
    EXPECT_NEAR(std::abs(m.state[0]), 1.0, 1e-12);
  }
}

TEST(UniformEnsemble, QubitThree) {
  const Ensemble e = uniform_ensemble(half_identity(), 3);
  EXPECT_LE(frobenius_distance(density_oracle(e), half_identity().matrix()), 1e-10);
}

TEST(UniformEnsemble, TooFewMembers) {
  EXPECT_THROW(uniform_ensemble(half_identity(), 1), MajorizationError);
  EXPECT_THROW(uniform_ensemble(half_identity(), 0), ValidationError);
}

TEST(VerifyEnsemble, Examples) {
  const DensityMatrix rho = random_density(4, 3, 5);
  const Ensemble e = synthesize_ensemble(rho, ProbVector::uniform(5));
  EXPECT_TRUE(verify_ensemble(e, rho, 1e-8).passed);

  const EnsembleVerification bad = verify_ensemble(ens({{1.0, ket({1, 0})}}), half_identity(), 1e-8);
  EXPECT_FALSE(bad.passed);
  EXPECT_NEAR(bad.reconstruction_error, kR, 1e-15);

  const Ensemble f = ens({{0.3, ket({1, 0})}, {0.7, ket({kR, Complex(0, kR)})}});
  EXPECT_TRUE(verify_ensemble(f, density_from_ensemble(f), 1e-12).passed);

  const EnsembleVerification mismatch = verify_ensemble(f, random_density(3, 3, 1), 1e-8);
  EXPECT_FALSE(mismatch.passed);
  EXPECT_TRUE(std::isinf(mismatch.reconstruction_error));
}

TEST(EntropyReport, Examples) {
  const DensityMatrix rho = diag({0.7, 0.2, 0.1});
  const Ensemble eig = synthesize_ensemble(rho, spectrum_vector(rho));
  const EntropyReport a = entropy_report(eig);
  EXPECT_NEAR(a.shannon, a.von_neumann, 1e-10);
  EXPECT_TRUE(a.holds);

  const EntropyReport b = entropy_report(uniform_ensemble(half_identity(), 3));
  EXPECT_NEAR(b.shannon, std::log(3.0), 1e-12);
  EXPECT_NEAR(b.von_neumann, std::log(2.0), 1e-12);
  EXPECT_TRUE(b.holds);
  EXPECT_TRUE(b.schur.all_hold);

  const EntropyReport c = entropy_report(ens({{1.0, ket({kR, Complex(0, -kR)})}}));
  EXPECT_NEAR(c.shannon, 0.0, 1e-15);
  EXPECT_NEAR(c.von_neumann, 0.0, 1e-12);
}

TEST(EntropyReport, PropertyShannonAtLeastVonNeumann) {
  std::mt19937_64 rng(91);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t dim = 1 + rng() % 8;
    const DensityMatrix rho = random_density(dim, 1 + rng() % dim, rng());
    const auto p = oracle::random_t_mix(spectrum_vector(rho).vec(), rng() % 10, rng);
    const EntropyReport r = entropy_report(synthesize_ensemble(rho, ProbVector(p, 1e-9)));
    ASSERT_GE(r.shannon, r.von_neumann - 1e-9);
    for (const SchurComparison& c : r.schur.comparisons)
      ASSERT_TRUE(c.holds) << c.name << " " << c.fx << " " << c.fy;
  }
}
