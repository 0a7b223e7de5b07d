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

#include "qens/bipartite.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/SVD>

#include "qens/errors.hpp"

namespace qens {

namespace {

// Two passes of classical Gram-Schmidt against the columns of q.
ComplexVector project_out(const ComplexMatrix& q, ComplexVector v) {
  if (q.cols() == 0) return v;
  for (int pass = 0; pass < 2; ++pass) v -= q * (q.adjoint() * v);
  return v;
}

ComplexMatrix orthonormalize_columns(const ComplexMatrix& c) {
  ComplexMatrix q(c.rows(), 0);
  for (Eigen::Index j = 0; j < c.cols(); ++j) {
    ComplexVector v = project_out(q, c.col(j));
    const double n = v.norm();
    if (n == 0.0) throw DomainError("relate_purifications: degenerate image of the support");
    q.conservativeResize(Eigen::NoChange, q.cols() + 1);
    q.col(q.cols() - 1) = v / n;
  }
  return q;
}

}  // namespace

BipartiteState::BipartiteState(ComplexMatrix amplitudes, double tol) : m_(std::move(amplitudes)) {
  if (m_.rows() == 0 || m_.cols() == 0)
    throw ValidationError("bipartite state: dimensions must be positive");
  require_finite(m_, "bipartite state");
  const double n = m_.norm();
  if (std::abs(n - 1.0) > tol) {
    std::ostringstream os;
    os << "bipartite state: norm " << real_str(n) << " differs from 1 by more than " << real_str(tol);
    throw ValidationError(os.str());
  }
}

BipartiteState BipartiteState::from_flat(std::size_t dim_a, std::size_t dim_b,
                                         const ComplexVector& flat, double tol) {
  if (static_cast<std::size_t>(flat.size()) != dim_a * dim_b)
    throw ValidationError("bipartite state: expected " + std::to_string(dim_a * dim_b) +
                          " amplitudes, got " + std::to_string(flat.size()));
  ComplexMatrix m = flat.reshaped<Eigen::RowMajor>(static_cast<Eigen::Index>(dim_a),
                                                   static_cast<Eigen::Index>(dim_b));
  return BipartiteState(std::move(m), tol);
}

ComplexVector BipartiteState::flat() const { return m_.reshaped<Eigen::RowMajor>(); }

BipartiteState BipartiteState::embed_a(std::size_t new_dim_a) const {
  if (new_dim_a < dim_a()) throw ValidationError("embed_a: cannot shrink subsystem A");
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(new_dim_a), m_.cols());
  m.topRows(m_.rows()) = m_;
  return BipartiteState(std::move(m));
}

BipartiteState BipartiteState::embed_b(std::size_t new_dim_b) const {
  if (new_dim_b < dim_b()) throw ValidationError("embed_b: cannot shrink subsystem B");
  ComplexMatrix m = ComplexMatrix::Zero(m_.rows(), static_cast<Eigen::Index>(new_dim_b));
  m.leftCols(m_.cols()) = m_;
  return BipartiteState(std::move(m));
}

double fidelity(const BipartiteState& a, const BipartiteState& b) {
  if (a.dim_a() != b.dim_a() || a.dim_b() != b.dim_b())
    throw ValidationError("fidelity: states have different shapes");
  return std::norm(a.amplitudes().cwiseProduct(b.amplitudes().conjugate()).sum());
}

ProbVector SchmidtDecomposition::probabilities() const { return ProbVector(coefficients); }

ComplexMatrix SchmidtDecomposition::reconstruct() const {
  RealVector s(static_cast<Eigen::Index>(coefficients.size()));
  for (std::size_t i = 0; i < coefficients.size(); ++i)
    s[static_cast<Eigen::Index>(i)] = std::sqrt(coefficients[i]);
  return basis_a * s.cast<Complex>().asDiagonal() * basis_b.transpose();
}

SchmidtDecomposition schmidt(const BipartiteState& psi) {
  // M = U Σ V†, so |ψ⟩ = Σ_i σ_i |u_i⟩ ⊗ |conj(v_i)⟩. A two-sided Jacobi SVD
  // keeps the discarded tail at rounding level; going through M M† would
  // leave amplitudes of order √ε behind when the state is rank deficient.
  const ComplexMatrix& m = psi.amplitudes();
  const Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& sigma = svd.singularValues();
  SchmidtDecomposition out;
  Eigen::Index r = 0;
  while (r < sigma.size() && sigma[r] * sigma[r] > kSchmidtCutoff) ++r;
  out.basis_a.resize(m.rows(), r);
  out.basis_b.resize(m.cols(), r);
  for (Eigen::Index i = 0; i < r; ++i) {
    out.coefficients.push_back(sigma[i] * sigma[i]);
    ComplexVector a = svd.matrixU().col(i);
    ComplexVector b = svd.matrixV().col(i).conjugate();
    // Same convention as hermitian_eig: first non-negligible entry of the
    // A vector real positive; B absorbs the conjugate phase.
    for (Eigen::Index k = 0; k < a.size(); ++k) {
      if (std::abs(a[k]) > 1e-12) {
        const Complex ph = std::abs(a[k]) / a[k];
        a *= ph;
        b /= ph;
        a[k] = std::abs(a[k]);
        break;
      }
    }
    out.basis_a.col(i) = a;
    out.basis_b.col(i) = b;
  }
  return out;
}

DensityMatrix reduced_density(const BipartiteState& psi, Side side, const Tolerances& tol) {
  const ComplexMatrix& m = psi.amplitudes();
  if (side == Side::kA) return DensityMatrix::validate(m * m.adjoint(), tol);
  return DensityMatrix::validate(m.transpose() * m.conjugate(), tol);
}

ComplexMatrix Cor4Decomposition::reconstruct() const {
  const Eigen::Index db = states_b.empty() ? 0 : states_b.front().size();
  ComplexMatrix m = ComplexMatrix::Zero(basis_a.rows(), db);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] == 0.0) continue;
    m.noalias() += std::sqrt(weights[i]) * basis_a.col(static_cast<Eigen::Index>(i)) *
                   states_b[i].transpose();
  }
  return m;
}

ComplexMatrix orthogonal_complement(const ComplexMatrix& cols, std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  const Eigen::Index want = n - cols.cols();
  ComplexMatrix basis = cols;
  ComplexMatrix out(n, 0);
  for (Eigen::Index added = 0; added < want; ++added) {
    // Pivot on the standard basis vector with the largest residual.
    Eigen::Index best = -1;
    double best_norm = -1.0;
    ComplexVector best_v;
    for (Eigen::Index k = 0; k < n; ++k) {
      ComplexVector e = ComplexVector::Zero(n);
      e[k] = 1.0;
      ComplexVector v = project_out(basis, e);
      const double r = v.norm();
      if (r > best_norm * (1.0 + 1e-12)) {
        best = k;
        best_norm = r;
        best_v = std::move(v);
      }
    }
    if (best < 0 || best_norm < 1e-8) throw DomainError("orthogonal_complement: rank deficiency");
    best_v /= best_norm;
    basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
    basis.col(basis.cols() - 1) = best_v;
    out.conservativeResize(Eigen::NoChange, out.cols() + 1);
    out.col(out.cols() - 1) = best_v;
  }
  return out;
}

ComplexMatrix relate_purifications(const BipartiteState& phi_in, const BipartiteState& psi_in,
                                   const Tolerances& tol) {
  if (phi_in.dim_b() != psi_in.dim_b())
    throw ValidationError("relate_purifications: B dimensions differ");
  const std::size_t n = std::max(phi_in.dim_a(), psi_in.dim_a());
  const BipartiteState phi = phi_in.embed_a(n);
  const BipartiteState psi = psi_in.embed_a(n);
  const ComplexMatrix& mphi = phi.amplitudes();
  const ComplexMatrix& mpsi = psi.amplitudes();

  const double gap = frobenius_distance(mphi.transpose() * mphi.conjugate(),
                                        mpsi.transpose() * mpsi.conjugate());
  if (gap > tol.rec) {
    std::ostringstream os;
    os << "not co-purifications: reduced densities on B differ by " << real_str(gap) << " (Frobenius)";
    throw DomainError(os.str());
  }

  const SchmidtDecomposition s = schmidt(phi);
  ComplexMatrix image(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(s.rank()));
  for (std::size_t i = 0; i < s.rank(); ++i) {
    const auto c = static_cast<Eigen::Index>(i);
    image.col(c) = mpsi * s.basis_b.col(c).conjugate() / std::sqrt(s.coefficients[i]);
  }
  const ComplexMatrix q_image = orthonormalize_columns(image);
  const ComplexMatrix perp_src = orthogonal_complement(s.basis_a, n);
  const ComplexMatrix perp_dst = orthogonal_complement(q_image, n);
  return q_image * s.basis_a.adjoint() + perp_dst * perp_src.adjoint();
}

BipartiteState purify(const DensityMatrix& rho, const ProbVector& weights,
                      const std::vector<StateVector>& states, const Tolerances& tol) {
  if (weights.size() != states.size())
    throw ValidationError("purify: weights and states differ in length");
  const auto db = static_cast<Eigen::Index>(rho.dim());
  ComplexMatrix m(static_cast<Eigen::Index>(states.size()), db);
  ComplexMatrix sum = ComplexMatrix::Zero(db, db);
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (static_cast<Eigen::Index>(states[i].dim()) != db)
      throw ValidationError("purify: state " + std::to_string(i) + " has the wrong dimension");
    const ComplexVector& v = states[i].amplitudes();
    m.row(static_cast<Eigen::Index>(i)) = std::sqrt(weights[i]) * v.transpose();
    sum.noalias() += weights[i] * v * v.adjoint();
  }
  const double err = frobenius_distance(sum, rho.matrix());
  if (err > tol.rec) {
    std::ostringstream os;
    os << "purify: ensemble reproduces rho only to " << real_str(err) << " (Frobenius)";
    throw DomainError(os.str());
  }
  return BipartiteState(std::move(m), tol.norm);
}

Cor4Decomposition corollary4_decompose(const BipartiteState& psi, const ProbVector& q,
                                       const Tolerances& tol) {
  const SchmidtDecomposition s = schmidt(psi);
  require_majorized(q, s.probabilities(), tol.prob);

  const DensityMatrix rho_b = reduced_density(psi, Side::kB, tol);
  const Ensemble ens = synthesize_ensemble(rho_b, q, tol);

  const std::size_t n = std::max(psi.dim_a(), q.size());
  const auto db = static_cast<Eigen::Index>(psi.dim_b());
  ComplexMatrix mphi = ComplexMatrix::Zero(static_cast<Eigen::Index>(n), db);
  for (std::size_t i = 0; i < ens.size(); ++i) {
    if (ens[i].weight == 0.0) continue;
    mphi.row(static_cast<Eigen::Index>(i)) = std::sqrt(ens[i].weight) * ens[i].state.transpose();
  }
  const BipartiteState phi(std::move(mphi), tol.norm);
  const ComplexMatrix u = relate_purifications(phi, psi.embed_a(n), tol);

  Cor4Decomposition out;
  out.dim_a = n;
  out.basis_a = u.leftCols(static_cast<Eigen::Index>(q.size()));
  for (std::size_t i = 0; i < ens.size(); ++i) {
    out.weights.push_back(ens[i].weight);
    out.states_b.push_back(ens[i].state);
    out.synthetic.push_back(ens[i].synthetic);
  }
  return out;
}

}  // namespace qens
