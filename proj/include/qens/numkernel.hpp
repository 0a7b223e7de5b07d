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

// Dense complex linear algebra and the validated value types the rest of
// the library is built on. Storage is Eigen; the eigensolver is a cyclic
// complex Jacobi iteration so results are a pure function of the input.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace qens {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Unnormalized vector, e.g. an eigenvector scaled so that its squared norm
/// is the eigenvalue.
using ScaledVector = ComplexVector;

/// Per-call tolerance bundle. Defaults are the library-wide defaults.
struct Tolerances {
  double herm = 1e-9;   // max |M_ij - conj(M_ji)|
  double trace = 1e-9;  // |tr M - 1|
  double psd = 1e-9;    // most negative eigenvalue allowed before clipping
  double orth = 1e-9;   // orthonormality of bases
  double rec = 1e-8;    // Frobenius reconstruction
  double norm = 1e-9;   // |‖ψ‖ - 1|
  double prob = 1e-9;   // probability vectors and majorization
};

/// Throws ValidationError if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& m, const char* what);

/// Shortest decimal form that parses back to exactly `v`. Used in messages.
std::string real_str(double v);

/// Largest |M_ij - conj(M_ji)|. Requires a square matrix.
double hermiticity_defect(const ComplexMatrix& m);

/// ‖A - B‖_F. Throws ValidationError on shape mismatch.
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// Multiplies v by the unit phase that makes its largest-magnitude entry
/// real and positive (first such entry on ties). Zero vectors are returned
/// unchanged.
ComplexVector fix_global_phase(const ComplexVector& v);
ComplexMatrix fix_global_phase(const ComplexMatrix& m);

/// A unit-norm state vector.
class StateVector {
 public:
  /// Validates finiteness and ‖v‖ within tol of 1.
  explicit StateVector(ComplexVector amplitudes, double tol = Tolerances{}.norm);

  /// Standard basis vector |index⟩ in the given dimension.
  static StateVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const ComplexVector& amplitudes() const { return amps_; }

 private:
  ComplexVector amps_;
};

/// Eigen-decomposition of a Hermitian matrix. Eigenvalues are sorted in
/// decreasing order; column j of `vectors` belongs to `values[j]`.
struct Spectrum {
  RealVector values;
  ComplexMatrix vectors;

  std::size_t dim() const { return static_cast<std::size_t>(values.size()); }
  StateVector eigenvector(std::size_t j) const;
  /// Σ_j λ_j v_j v_j†.
  ComplexMatrix reconstruct() const;
};

/// Cyclic Jacobi eigensolver for Hermitian matrices.
///
/// Sweeps the upper triangle in row order with unitary 2x2 rotations until
/// the off-diagonal Frobenius norm is at most 1e-12 (scaled by ‖H‖_F when
/// that exceeds one) or 100 sweeps have run. Each eigenvector is rephased so
/// its first component above 1e-12 in magnitude is real positive.
/// Eigenvalues within 1e-12 of each other are ordered by the lexicographic
/// order of their (rephased) eigenvectors, largest first.
///
/// Throws ValidationError for non-square, non-finite or non-Hermitian input.
Spectrum hermitian_eig(const ComplexMatrix& h, double herm_tol = Tolerances{}.herm);

/// Hermitian, positive-semidefinite, unit-trace matrix.
class DensityMatrix {
 public:
  /// Validates m against `tol`. Eigenvalues in [-tol.psd, 0) are clipped to
  /// zero and the trace is renormalized to one.
  static DensityMatrix validate(const ComplexMatrix& m, const Tolerances& tol = {});

  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }
  const Spectrum& spectrum() const { return spectrum_; }
  /// Number of eigenvalues strictly greater than `cutoff`.
  std::size_t rank(double cutoff = Tolerances{}.psd) const;

 private:
  DensityMatrix(ComplexMatrix m, Spectrum s);

  ComplexMatrix matrix_;
  Spectrum spectrum_;
};

/// Convenience wrapper: validate(m, {.psd = tol, .trace = tol, .herm = tol}).
DensityMatrix validate_density(const ComplexMatrix& m, double tol = 1e-9);

// ---------------------------------------------------------------------------
// Random instances. All generators take an explicit engine or seed.

using Rng = std::mt19937_64;

/// i.i.d. standard complex Gaussian entries (real and imaginary parts each
/// N(0, 1/2)).
ComplexMatrix random_gaussian(std::size_t rows, std::size_t cols, Rng& rng);

/// Haar-distributed unitary (QR of a complex Gaussian with the phase of R's
/// diagonal divided out).
ComplexMatrix random_unitary(std::size_t dim, Rng& rng);

/// Real orthogonal matrix, Haar-distributed on O(n).
RealMatrix random_orthogonal(std::size_t dim, Rng& rng);

/// Random Hermitian matrix (G + G†)/2.
ComplexMatrix random_hermitian(std::size_t dim, Rng& rng);

/// Uniformly random unit vector.
ComplexVector random_state(std::size_t dim, Rng& rng);

/// G G† / tr(G G†) with G a dim x rank complex Gaussian drawn from an
/// engine seeded with `seed`. Throws ValidationError unless 1 <= rank <= dim.
DensityMatrix random_density(std::size_t dim, std::size_t rank, std::uint64_t seed);

}  // namespace qens
