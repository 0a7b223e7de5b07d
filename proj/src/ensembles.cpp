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

#include <cmath>
#include <limits>
#include <string>

#include "qens/errors.hpp"

namespace qens {

namespace {

constexpr double kEntropySlack = 1e-9;
constexpr double kSpectrumFloor = 1e-12;

}  // namespace

Ensemble::Ensemble(std::vector<EnsembleMember> members, const Tolerances& tol)
    : members_(std::move(members)) {
  if (members_.empty()) throw ValidationError("ensemble: must have at least one member");
  std::vector<double> w;
  w.reserve(members_.size());
  const Eigen::Index d = members_.front().state.size();
  if (d == 0) throw ValidationError("ensemble: states must be non-empty");
  for (std::size_t i = 0; i < members_.size(); ++i) {
    const EnsembleMember& m = members_[i];
    if (m.state.size() != d)
      throw ValidationError("ensemble: member " + std::to_string(i) + " has dimension " +
                            std::to_string(m.state.size()) + ", expected " + std::to_string(d));
    if (!m.state.allFinite())
      throw ValidationError("ensemble: member " + std::to_string(i) + " has non-finite entries");
    if (m.weight > tol.prob && std::abs(m.state.norm() - 1.0) > tol.norm)
      throw ValidationError("ensemble: member " + std::to_string(i) + " state has norm " +
                            std::to_string(m.state.norm()));
    w.push_back(m.weight);
  }
  ProbVector clipped(std::move(w), tol.prob);
  for (std::size_t i = 0; i < members_.size(); ++i) members_[i].weight = clipped[i];
}

std::size_t Ensemble::dim() const { return static_cast<std::size_t>(members_.front().state.size()); }

ProbVector Ensemble::weights() const {
  std::vector<double> w;
  w.reserve(members_.size());
  for (const auto& m : members_) w.push_back(m.weight);
  return ProbVector(std::move(w));
}

DensityMatrix density_from_ensemble(const Ensemble& e, const Tolerances& tol) {
  const auto d = static_cast<Eigen::Index>(e.dim());
  ComplexMatrix rho = ComplexMatrix::Zero(d, d);
  for (const EnsembleMember& m : e.members()) {
    if (m.weight == 0.0) continue;
    rho.noalias() += m.weight * m.state * m.state.adjoint();
  }
  return DensityMatrix::validate(rho, tol);
}

ProbVector spectrum_vector(const DensityMatrix& rho) {
  const RealVector& v = rho.spectrum().values;
  return ProbVector(std::vector<double>(v.begin(), v.end()));
}

bool is_compatible(const ProbVector& p, const DensityMatrix& rho, double tol) {
  return is_majorized_by(p, spectrum_vector(rho), tol);
}

namespace {

// Eigenvalues at rounding level are zero. Left in, their square roots put
// stray amplitudes of order 1e-8 into the synthesized states.
RealVector floored_spectrum(const DensityMatrix& rho) {
  RealVector lam = rho.spectrum().values;
  for (double& v : lam) v = v < kSpectrumFloor ? 0.0 : v;
  return lam;
}

}  // namespace

Ensemble synthesize_ensemble(const DensityMatrix& rho, const ProbVector& p,
                             const Tolerances& tol) {
  const RealVector lam = floored_spectrum(rho);
  const ProbVector lambda(std::vector<double>(lam.begin(), lam.end()), tol.prob);
  const HornWitness horn = horn_orthogonal(p, lambda, tol.prob);
  const auto dim = static_cast<Eigen::Index>(rho.dim());
  const auto n = static_cast<Eigen::Index>(horn.chain.dim);

  // Scaled eigenvectors |e_j⟩ as columns, zero-padded to n columns.
  ComplexMatrix scaled = ComplexMatrix::Zero(dim, n);
  const Spectrum& spec = rho.spectrum();
  for (Eigen::Index j = 0; j < dim; ++j)
    scaled.col(j) = std::sqrt(lam[j]) * spec.vectors.col(j);

  std::vector<EnsembleMember> members;
  members.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const ComplexVector row = scaled * horn.W.row(static_cast<Eigen::Index>(i))
                                           .transpose()
                                           .cast<Complex>();
    const double norm = row.norm();
    EnsembleMember m;
    m.weight = p[i];
    if (p[i] == 0.0 || norm == 0.0) {
      m.state = StateVector::basis(rho.dim(), 0).amplitudes();
      m.synthetic = true;
    } else {
      m.state = fix_global_phase(ComplexVector(row / norm));
    }
    members.push_back(std::move(m));
  }
  return Ensemble(std::move(members), tol);
}

Ensemble uniform_ensemble(const DensityMatrix& rho, std::size_t m, const Tolerances& tol) {
  if (m == 0) throw ValidationError("uniform ensemble needs at least one member");
  const std::size_t r = rho.rank(tol.psd);
  if (m < r) {
    // Report the failing partial sum of (1/m, ...) against the spectrum.
    require_majorized(ProbVector::uniform(m), spectrum_vector(rho),
                      tol.prob);
    throw MajorizationError(m, 1.0, rho.spectrum().values.head(static_cast<Eigen::Index>(m)).sum(),
                            false);
  }
  return synthesize_ensemble(rho, ProbVector::uniform(m), tol);
}

EnsembleVerification verify_ensemble(const Ensemble& e, const DensityMatrix& rho, double tol) {
  EnsembleVerification v;
  const auto d = static_cast<Eigen::Index>(e.dim());
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const EnsembleMember& m : e.members())
    sum.noalias() += m.weight * m.state * m.state.adjoint();
  v.reconstruction_error = sum.rows() == rho.matrix().rows()
                               ? frobenius_distance(sum, rho.matrix())
                               : std::numeric_limits<double>::infinity();
  v.majorization = check_majorization(e.weights(), spectrum_vector(rho), tol);
  for (const EnsembleMember& m : e.members()) {
    const double dev = m.synthetic ? 0.0 : std::abs(m.state.norm() - 1.0);
    v.norm_deviations.push_back(dev);
    v.max_norm_deviation = std::max(v.max_norm_deviation, dev);
  }
  v.passed = v.reconstruction_error <= tol && v.majorization.holds && v.max_norm_deviation <= tol;
  return v;
}

double shannon_entropy(std::span<const double> p) {
  double h = 0.0;
  for (double v : p)
    if (v > 0.0) h -= v * std::log(v);
  return h;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const RealVector& v = rho.spectrum().values;
  return shannon_entropy(std::span<const double>(v.data(), static_cast<std::size_t>(v.size())));
}

EntropyReport entropy_report(const Ensemble& e) {
  EntropyReport r;
  const DensityMatrix rho = density_from_ensemble(e);
  const ProbVector w = e.weights();
  r.shannon = shannon_entropy(w.weights());
  r.von_neumann = von_neumann_entropy(rho);
  r.holds = r.shannon >= r.von_neumann - kEntropySlack;
  const RealVector lam = floored_spectrum(rho);
  r.schur = compare_schur(w.weights(),
                          std::span<const double>(lam.data(), static_cast<std::size_t>(lam.size())));
  return r;
}

}  // namespace qens
