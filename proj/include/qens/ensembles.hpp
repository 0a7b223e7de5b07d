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

// Pure-state ensembles {p_i, |ψ_i⟩} of a density matrix: the compatibility
// test p ≺ λ(ρ) and an explicit construction for every compatible p.

#pragma once

#include <cstddef>
#include <vector>

#include "qens/majorize.hpp"
#include "qens/numkernel.hpp"

namespace qens {

struct EnsembleMember {
  double weight = 0.0;
  ComplexVector state;
  /// Placeholder state for a zero-weight member (its state is undefined).
  bool synthetic = false;
};

/// Weighted pure states. Weights form a probability vector; every member
/// with weight above tol.prob has a unit-norm state; all states share one
/// dimension.
class Ensemble {
 public:
  explicit Ensemble(std::vector<EnsembleMember> members, const Tolerances& tol = {});

  std::size_t size() const { return members_.size(); }
  std::size_t dim() const;
  const std::vector<EnsembleMember>& members() const { return members_; }
  const EnsembleMember& operator[](std::size_t i) const { return members_[i]; }
  ProbVector weights() const;

 private:
  std::vector<EnsembleMember> members_;
};

/// Σ_i p_i |ψ_i⟩⟨ψ_i|, validated as a density matrix.
DensityMatrix density_from_ensemble(const Ensemble& e, const Tolerances& tol = {});

/// p ≺ λ(ρ) with the shorter vector zero-padded.
bool is_compatible(const ProbVector& p, const DensityMatrix& rho, double tol = Tolerances{}.prob);

/// λ(ρ) as a probability vector, sorted decreasing.
ProbVector spectrum_vector(const DensityMatrix& rho);

/// An ensemble for rho with weights exactly p.
///
/// Scales the eigenvectors so that ⟨e_j|e_j⟩ = λ_j (padding with zero
/// vectors when p is longer), mixes them with the orthogonal W from
/// horn_orthogonal(p, λ), and normalizes each row: √p_i |ψ_i⟩ = Σ_j W_ij |e_j⟩.
/// Members with p_i = 0 get the placeholder |0⟩ and are flagged synthetic.
/// States are rephased so their largest entry is real positive.
///
/// Throws MajorizationError when p is not compatible with rho.
Ensemble synthesize_ensemble(const DensityMatrix& rho, const ProbVector& p,
                             const Tolerances& tol = {});

/// m equally weighted states. Throws MajorizationError when m < rank(rho).
Ensemble uniform_ensemble(const DensityMatrix& rho, std::size_t m, const Tolerances& tol = {});

struct EnsembleVerification {
  double reconstruction_error = 0.0;  // ‖Σ p_i ψ_i ψ_i† - ρ‖_F
  MajorizationCheck majorization;     // weights vs spectrum
  std::vector<double> norm_deviations;  // |‖ψ_i‖ - 1|, zero for synthetic members
  double max_norm_deviation = 0.0;
  bool passed = false;
};

/// Never throws on a mismatch; the report carries the failures.
EnsembleVerification verify_ensemble(const Ensemble& e, const DensityMatrix& rho, double tol);

struct EntropyReport {
  double shannon = 0.0;       // H(weights), natural log
  double von_neumann = 0.0;   // S(ρ), natural log
  bool holds = true;          // H >= S - 1e-9
  SchurReport schur;          // weights vs spectrum
};

EntropyReport entropy_report(const Ensemble& e);

/// -Σ λ ln λ over the spectrum of rho.
double von_neumann_entropy(const DensityMatrix& rho);
/// -Σ p ln p.
double shannon_entropy(std::span<const double> p);

}  // namespace qens
