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

// Bipartite pure states: Schmidt form, partial traces, purifications, and
// rewriting |ψ⟩ = Σ_i √q_i |i_A'⟩|ψ_i⟩ for any q majorized by the Schmidt
// coefficients.

#pragma once

#include <cstddef>
#include <vector>

#include "qens/ensembles.hpp"
#include "qens/majorize.hpp"
#include "qens/numkernel.hpp"

namespace qens {

/// Unit vector in C^dimA ⊗ C^dimB. Amplitudes are held as a dimA x dimB
/// matrix: |ψ⟩ = Σ_ab M(a, b) |a⟩|b⟩, which is the row-major flat order.
class BipartiteState {
 public:
  BipartiteState(ComplexMatrix amplitudes, double tol = Tolerances{}.norm);
  /// Flat amplitudes indexed a * dimB + b.
  static BipartiteState from_flat(std::size_t dim_a, std::size_t dim_b,
                                  const ComplexVector& flat, double tol = Tolerances{}.norm);

  std::size_t dim_a() const { return static_cast<std::size_t>(m_.rows()); }
  std::size_t dim_b() const { return static_cast<std::size_t>(m_.cols()); }
  const ComplexMatrix& amplitudes() const { return m_; }
  ComplexVector flat() const;

  /// Same state with A enlarged to new_dim_a by zero rows.
  BipartiteState embed_a(std::size_t new_dim_a) const;
  /// Same state with B enlarged to new_dim_b by zero columns.
  BipartiteState embed_b(std::size_t new_dim_b) const;

 private:
  ComplexMatrix m_;
};

/// |⟨a|b⟩|² for states of equal shape.
double fidelity(const BipartiteState& a, const BipartiteState& b);

enum class Side { kA, kB };

struct SchmidtDecomposition {
  std::vector<double> coefficients;  // p_i, decreasing, all above 1e-12
  ComplexMatrix basis_a;             // dimA x r, orthonormal columns |i_A⟩
  ComplexMatrix basis_b;             // dimB x r, orthonormal columns |i_B⟩

  std::size_t rank() const { return coefficients.size(); }
  ProbVector probabilities() const;
  /// Σ_i √p_i |i_A⟩|i_B⟩ as a dimA x dimB amplitude matrix.
  ComplexMatrix reconstruct() const;
};

/// Schmidt coefficients below this are treated as zero.
inline constexpr double kSchmidtCutoff = 1e-12;

/// Diagonalizes the A-side reduced density and projects the state onto each
/// eigenvector, which keeps the reconstruction exact to rounding even for
/// nearly degenerate coefficients.
SchmidtDecomposition schmidt(const BipartiteState& psi);

/// tr_B |ψ⟩⟨ψ| (side A) or tr_A |ψ⟩⟨ψ| (side B).
DensityMatrix reduced_density(const BipartiteState& psi, Side side, const Tolerances& tol = {});

struct Cor4Decomposition {
  std::vector<double> weights;           // q_i
  ComplexMatrix basis_a;                 // columns |i_A'⟩, orthonormal
  std::vector<ComplexVector> states_b;   // |ψ_i⟩, unit norm
  std::vector<bool> synthetic;           // zero-weight placeholders
  std::size_t dim_a = 0;                 // after any extension

  /// Σ_i √q_i |i_A'⟩|ψ_i⟩ as a dim_a x dimB amplitude matrix.
  ComplexMatrix reconstruct() const;
};

/// |ψ⟩ = Σ_i √q_i |i_A'⟩|ψ_i⟩. Builds an ensemble for tr_A|ψ⟩⟨ψ| with
/// weights q, purifies it as |φ⟩ = Σ_i √q_i |i⟩|ψ_i⟩, and maps the standard
/// A basis through the unitary U with (U ⊗ I)|φ⟩ = |ψ⟩. A is enlarged to
/// q.size() when q is longer than dimA.
///
/// Throws MajorizationError when q is not majorized by the Schmidt
/// coefficients.
Cor4Decomposition corollary4_decompose(const BipartiteState& psi, const ProbVector& q,
                                       const Tolerances& tol = {});

/// Σ_i √w_i |i⟩|ψ_i⟩ with A of dimension states.size(). Throws DomainError
/// when the ensemble does not reproduce rho within tol.rec.
BipartiteState purify(const DensityMatrix& rho, const ProbVector& weights,
                      const std::vector<StateVector>& states, const Tolerances& tol = {});

/// Unitary U on A with (U ⊗ I)|φ⟩ = |ψ⟩.
///
/// U is M_ψ M_φ⁺ on the support of tr_B|φ⟩⟨φ| (re-orthonormalized), extended
/// by mapping the orthogonal complement of that support onto the complement
/// of the support of tr_B|ψ⟩⟨ψ|. When dimA differs the smaller state is
/// embedded with zero rows. Throws DomainError when the B-side reduced
/// densities differ by more than tol.rec.
ComplexMatrix relate_purifications(const BipartiteState& phi, const BipartiteState& psi,
                                   const Tolerances& tol = {});

/// Orthonormal basis of the orthogonal complement of the column span of
/// `cols` (assumed orthonormal). Gram-Schmidt over the standard basis,
/// pivoting each step on the basis vector with the largest residual.
ComplexMatrix orthogonal_complement(const ComplexMatrix& cols, std::size_t dim);

}  // namespace qens
