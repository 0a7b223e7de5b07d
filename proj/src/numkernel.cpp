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

#include "qens/numkernel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qens/errors.hpp"

namespace qens {

namespace {

constexpr double kJacobiTarget = 1e-12;
constexpr int kJacobiMaxSweeps = 100;
constexpr double kPhaseCutoff = 1e-12;
constexpr double kDegenerateGap = 1e-12;

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Lexicographic "greater than" on complex vectors, real part before
// imaginary part.
bool lex_greater(const ComplexVector& a, const ComplexVector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() > b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() > b[i].imag();
  }
  return false;
}

ComplexVector phase_first_nonzero(const ComplexVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    double r = std::abs(v[i]);
    if (r > kPhaseCutoff) {
      ComplexVector out = v * (std::conj(v[i]) / r);
      out[i] = Complex(out[i].real(), 0.0);
      return out;
    }
  }
  return v;
}

}  // namespace

std::string real_str(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void require_finite(const ComplexMatrix& m, const char* what) {
  if (!m.allFinite()) throw ValidationError(std::string(what) + ": entries must be finite");
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw ValidationError("matrix is not square");
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream os;
    os << "shape mismatch: " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x"
       << b.cols();
    throw ValidationError(os.str());
  }
  return (a - b).norm();
}

ComplexVector fix_global_phase(const ComplexVector& v) {
  if (v.size() == 0) return v;
  double best = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) best = std::max(best, std::abs(v[i]));
  if (best == 0.0) return v;
  // First entry within rounding of the maximum magnitude.
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    double r = std::abs(v[i]);
    if (r >= best * (1.0 - 1e-12)) {
      ComplexVector out = v * (std::conj(v[i]) / r);
      out[i] = Complex(out[i].real(), 0.0);
      return out;
    }
  }
  return v;
}

ComplexMatrix fix_global_phase(const ComplexMatrix& m) {
  ComplexVector flat = m.reshaped<Eigen::RowMajor>();
  ComplexVector fixed = fix_global_phase(flat);
  return fixed.reshaped<Eigen::RowMajor>(m.rows(), m.cols());
}

StateVector::StateVector(ComplexVector amplitudes, double tol) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) throw ValidationError("state vector: dimension must be positive");
  if (!amps_.allFinite()) throw ValidationError("state vector: entries must be finite");
  double n = amps_.norm();
  if (std::abs(n - 1.0) > tol) {
    std::ostringstream os;
    os << "state vector: norm " << real_str(n) << " differs from 1 by more than " << real_str(tol);
    throw ValidationError(os.str());
  }
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw ValidationError("basis index out of range");
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return StateVector(std::move(v));
}

StateVector Spectrum::eigenvector(std::size_t j) const {
  return StateVector(vectors.col(static_cast<Eigen::Index>(j)));
}

ComplexMatrix Spectrum::reconstruct() const {
  return vectors * values.cast<Complex>().asDiagonal() * vectors.adjoint();
}

Spectrum hermitian_eig(const ComplexMatrix& h, double herm_tol) {
  if (h.rows() != h.cols()) {
    std::ostringstream os;
    os << "hermitian_eig: matrix is " << h.rows() << "x" << h.cols() << ", not square";
    throw ValidationError(os.str());
  }
  require_finite(h, "hermitian_eig");
  const double defect = hermiticity_defect(h);
  if (defect > herm_tol) {
    std::ostringstream os;
    os << "hermitian_eig: max |H_ij - conj(H_ji)| = " << real_str(defect) << " exceeds " << real_str(herm_tol);
    throw ValidationError(os.str());
  }

  const Eigen::Index n = h.rows();
  ComplexMatrix a = 0.5 * (h + h.adjoint());
  ComplexMatrix v = ComplexMatrix::Identity(n, n);
  const double threshold = kJacobiTarget * std::max(1.0, a.norm());

  // One sweep past the threshold; convergence is quadratic by then.
  bool polishing = false;
  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    if (polishing) {
      if (off_diagonal_norm(a) == 0.0) break;
    } else if (off_diagonal_norm(a) <= threshold) {
      polishing = true;
      if (off_diagonal_norm(a) == 0.0) break;
    }
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const Complex phase = apq / r;  // a_pq = r e^{iφ}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * r);
        double t;
        if (std::abs(theta) > 1e150)
          t = 0.5 / theta;
        else
          t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // G = diag(1, e^{-iφ}) · [[c, s], [-s, c]] on (p, q).
        const Complex gpp = c, gpq = s;
        const Complex gqp = -s * std::conj(phase), gqq = c * std::conj(phase);
        for (Eigen::Index k = 0; k < n; ++k) {  // A ← A G
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {  // A ← G† A
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (Eigen::Index k = 0; k < n; ++k) {  // V ← V G
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * gpp + vkq * gqp;
          v(k, q) = vkp * gpq + vkq * gqq;
        }
      }
    }
    if (polishing) break;
  }

  std::vector<ComplexVector> vecs;
  vecs.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) vecs.push_back(phase_first_nonzero(v.col(j)));

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return a(i, i).real() > a(j, j).real();
  });
  // Within runs of numerically equal eigenvalues order by eigenvector.
  const double gap = kDegenerateGap * std::max(1.0, a.norm());
  std::size_t begin = 0;
  while (begin < order.size()) {
    std::size_t end = begin + 1;
    while (end < order.size() &&
           a(order[end - 1], order[end - 1]).real() - a(order[end], order[end]).real() <= gap)
      ++end;
    if (end - begin > 1) {
      std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(begin),
                       order.begin() + static_cast<std::ptrdiff_t>(end),
                       [&](Eigen::Index i, Eigen::Index j) {
                         return lex_greater(vecs[static_cast<std::size_t>(i)],
                                            vecs[static_cast<std::size_t>(j)]);
                       });
    }
    begin = end;
  }

  Spectrum out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index src = order[static_cast<std::size_t>(j)];
    out.values[j] = a(src, src).real();
    out.vectors.col(j) = vecs[static_cast<std::size_t>(src)];
  }
  return out;
}

DensityMatrix::DensityMatrix(ComplexMatrix m, Spectrum s)
    : matrix_(std::move(m)), spectrum_(std::move(s)) {}

DensityMatrix DensityMatrix::validate(const ComplexMatrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream os;
    os << "density matrix must be square and non-empty, got " << m.rows() << "x" << m.cols();
    throw ValidationError(os.str());
  }
  require_finite(m, "density matrix");
  const double defect = hermiticity_defect(m);
  if (defect > tol.herm) {
    std::ostringstream os;
    os << "density matrix: not Hermitian, max |M_ij - conj(M_ji)| = " << real_str(defect)
       << " exceeds " << real_str(tol.herm);
    throw ValidationError(os.str());
  }
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > tol.trace) {
    std::ostringstream os;
    os << "density matrix: trace " << real_str(tr) << " exceeds tolerance " << real_str(tol.trace)
       << " around 1";
    throw ValidationError(os.str());
  }
  ComplexMatrix herm = 0.5 * (m + m.adjoint());
  Spectrum spec = hermitian_eig(herm, tol.herm);
  const double lowest = spec.values.size() ? spec.values.minCoeff() : 0.0;
  if (lowest < -tol.psd) {
    std::ostringstream os;
    os << "density matrix: eigenvalue " << real_str(lowest) << " < -" << real_str(tol.psd);
    throw ValidationError(os.str());
  }
  // Negatives at rounding level are zeroed in the spectrum only; rebuilding
  // the matrix for them would break exact round trips of stored matrices.
  bool clipped = false;
  for (Eigen::Index j = 0; j < spec.values.size(); ++j) {
    if (spec.values[j] < 0.0) {
      clipped = clipped || spec.values[j] < -1e-14;
      spec.values[j] = 0.0;
    }
  }
  if (clipped) herm = spec.reconstruct();
  // Already-normalized input is kept bit-for-bit so files round-trip.
  const double sum = herm.trace().real();
  if (std::abs(sum - 1.0) > 1e-14) {
    herm /= sum;
    spec.values /= sum;
  }
  return DensityMatrix(std::move(herm), std::move(spec));
}

std::size_t DensityMatrix::rank(double cutoff) const {
  return static_cast<std::size_t>((spectrum_.values.array() > cutoff).count());
}

DensityMatrix validate_density(const ComplexMatrix& m, double tol) {
  Tolerances t;
  t.herm = t.trace = t.psd = tol;
  return DensityMatrix::validate(m, t);
}

ComplexMatrix random_gaussian(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < g.cols(); ++j)
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
  ComplexMatrix g = random_gaussian(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

RealMatrix random_orthogonal(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(dim);
  RealMatrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = normal(rng);
  Eigen::HouseholderQR<RealMatrix> qr(g);
  RealMatrix q = qr.householderQ();
  const RealMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  return q;
}

ComplexMatrix random_hermitian(std::size_t dim, Rng& rng) {
  ComplexMatrix g = random_gaussian(dim, dim, rng);
  return 0.5 * (g + g.adjoint());
}

ComplexVector random_state(std::size_t dim, Rng& rng) {
  ComplexVector v = random_gaussian(dim, 1, rng).col(0);
  return v / v.norm();
}

DensityMatrix random_density(std::size_t dim, std::size_t rank, std::uint64_t seed) {
  if (dim == 0 || rank == 0 || rank > dim) {
    std::ostringstream os;
    os << "random_density: need 1 <= rank <= dim, got dim=" << dim << " rank=" << rank;
    throw ValidationError(os.str());
  }
  Rng rng(seed);
  ComplexMatrix g = random_gaussian(dim, rank, rng);
  ComplexMatrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix::validate(m);
}

}  // namespace qens
