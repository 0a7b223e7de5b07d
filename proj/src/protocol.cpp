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

#include "qens/protocol.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qens/errors.hpp"

namespace qens {

namespace {

ComplexMatrix matrix_power(const ComplexMatrix& m, std::size_t k) {
  ComplexMatrix out = ComplexMatrix::Identity(m.rows(), m.cols());
  for (std::size_t i = 0; i < k; ++i) out = out * m;
  return out;
}

// Orthonormal basis for the column span, dropping columns whose residual
// falls below `cutoff`.
ComplexMatrix range_basis(const ComplexMatrix& c, double cutoff) {
  ComplexMatrix q(c.rows(), 0);
  for (Eigen::Index j = 0; j < c.cols(); ++j) {
    ComplexVector v = c.col(j);
    for (int pass = 0; pass < 2 && q.cols() > 0; ++pass) v -= q * (q.adjoint() * v);
    const double n = v.norm();
    if (n <= cutoff) continue;
    q.conservativeResize(Eigen::NoChange, q.cols() + 1);
    q.col(q.cols() - 1) = v / n;
  }
  return q;
}

}  // namespace

WeylPair::WeylPair(std::size_t d_, std::size_t s_, std::size_t t_) : d(d_), s(s_), t(t_) {
  if (d == 0) throw ValidationError("Weyl pair: d must be at least 1");
  if (s >= d || t >= d) {
    std::ostringstream os;
    os << "Weyl pair: indices (" << s << ", " << t << ") out of range for d=" << d;
    throw ValidationError(os.str());
  }
}

ComplexMatrix shift_op(std::size_t d) {
  if (d == 0) throw ValidationError("shift_op: d must be at least 1");
  const auto n = static_cast<Eigen::Index>(d);
  ComplexMatrix x = ComplexMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) x((j + 1) % n, j) = 1.0;
  return x;
}

ComplexMatrix clock_op(std::size_t d) {
  if (d == 0) throw ValidationError("clock_op: d must be at least 1");
  const auto n = static_cast<Eigen::Index>(d);
  ComplexMatrix z = ComplexMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    z(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) /
                                  static_cast<double>(d));
  return z;
}

ComplexMatrix weyl_op(const WeylPair& pair) {
  if (pair.d == 0 || pair.s >= pair.d || pair.t >= pair.d)
    throw ValidationError("weyl_op: invalid Weyl pair");
  const auto n = static_cast<Eigen::Index>(pair.d);
  // X^s Z^t |j⟩ = ω^{jt} |j+s⟩, built directly to avoid rounding in powers.
  ComplexMatrix u = ComplexMatrix::Zero(n, n);
  for (std::size_t j = 0; j < pair.d; ++j) {
    const std::size_t phase_index = (j * pair.t) % pair.d;
    u(static_cast<Eigen::Index>((j + pair.s) % pair.d), static_cast<Eigen::Index>(j)) =
        std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(phase_index) /
                            static_cast<double>(pair.d));
  }
  return u;
}

ComplexMatrix weyl_twirl(const ComplexMatrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw ValidationError("weyl_twirl: matrix must be square and non-empty");
  const auto d = static_cast<std::size_t>(a.rows());
  ComplexMatrix sum = ComplexMatrix::Zero(a.rows(), a.cols());
  for (std::size_t s = 0; s < d; ++s)
    for (std::size_t t = 0; t < d; ++t) {
      const ComplexMatrix u = weyl_op(WeylPair(d, s, t));
      sum.noalias() += u.adjoint() * a * u;
    }
  return sum;
}

double MeasurementSet::completeness_error() const {
  const auto n = static_cast<Eigen::Index>(dim_b);
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (const ComplexMatrix& e : operators) sum.noalias() += e.adjoint() * e;
  return (sum - ComplexMatrix::Identity(n, n)).norm();
}

MeasurementSet build_measurement(const std::vector<StateVector>& states, std::size_t d) {
  if (d == 0) throw ValidationError("build_measurement: d must be at least 1");
  if (states.size() != d) {
    std::ostringstream os;
    os << "build_measurement: expected " << d << " states, got " << states.size();
    throw ValidationError(os.str());
  }
  const std::size_t dim_b = states.front().dim();
  if (dim_b < d) throw ValidationError("build_measurement: Bob's dimension is smaller than d");
  const auto nb = static_cast<Eigen::Index>(dim_b);
  const auto nd = static_cast<Eigen::Index>(d);

  ComplexMatrix f = ComplexMatrix::Zero(nb, nb);
  for (std::size_t i = 0; i < d; ++i) {
    if (states[i].dim() != dim_b)
      throw ValidationError("build_measurement: states have different dimensions");
    f.col(static_cast<Eigen::Index>(i)) = states[i].amplitudes();
  }
  const double tr_ff = (f.adjoint() * f).trace().real();
  const ComplexMatrix e = f / std::sqrt(static_cast<double>(d) * tr_ff);

  // (1/d) J on |d⟩..|dim_b-1⟩, J an isometry onto range(F)^⊥.
  ComplexMatrix tail = ComplexMatrix::Zero(nb, nb);
  if (dim_b > d) {
    const ComplexMatrix range = range_basis(f.leftCols(nd), 1e-10);
    const ComplexMatrix perp = orthogonal_complement(range, dim_b);
    tail.rightCols(nb - nd) = perp.leftCols(nb - nd) / static_cast<double>(d);
  }

  MeasurementSet m;
  m.d = d;
  m.dim_b = dim_b;
  m.operators.reserve(d * d);
  for (std::size_t s = 0; s < d; ++s)
    for (std::size_t t = 0; t < d; ++t) {
      ComplexMatrix u = ComplexMatrix::Zero(nb, nb);
      u.topLeftCorner(nd, nd) = weyl_op(WeylPair(d, s, t));
      m.operators.push_back(e * u + tail);
    }
  return m;
}

std::vector<double> outcome_distribution(const MeasurementSet& meas, const BipartiteState& psi) {
  if (psi.dim_b() != meas.dim_b) {
    std::ostringstream os;
    os << "outcome_distribution: state has Bob dimension " << psi.dim_b()
       << ", measurement acts on " << meas.dim_b;
    throw ValidationError(os.str());
  }
  std::vector<double> p;
  p.reserve(meas.operators.size());
  for (const ComplexMatrix& e : meas.operators)
    p.push_back((psi.amplitudes() * e.transpose()).squaredNorm());
  return p;
}

BipartiteState maximally_entangled(std::size_t d, std::size_t dim_a, std::size_t dim_b) {
  if (d == 0 || dim_a < d || dim_b < d)
    throw ValidationError("maximally_entangled: need 1 <= d <= min(dim_a, dim_b)");
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim_a),
                                        static_cast<Eigen::Index>(dim_b));
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(d); ++i)
    m(i, i) = 1.0 / std::sqrt(static_cast<double>(d));
  return BipartiteState(std::move(m));
}

CommCost comm_cost(std::size_t d) {
  if (d == 0) throw ValidationError("comm_cost: d must be at least 1");
  // Smallest b with 2^b >= d², i.e. ⌈2 log₂ d⌉ without floating point.
  const unsigned __int128 d2 = static_cast<unsigned __int128>(d) * d;
  std::size_t b = 0;
  while ((static_cast<unsigned __int128>(1) << b) < d2) ++b;
  return {b, d - 1};
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

namespace {

BipartiteState embed_target(const BipartiteState& target, std::size_t d) {
  return target.embed_a(std::max(target.dim_a(), d)).embed_b(std::max(target.dim_b(), d));
}

}  // namespace

Protocol::Protocol(const BipartiteState& target, std::size_t d, const Tolerances& tol)
    : d_(d),
      target_(embed_target(target, d == 0 ? 1 : d)),
      initial_(maximally_entangled(d == 0 ? 1 : d, target_.dim_a(), target_.dim_b())) {
  if (d == 0) throw ValidationError("protocol: d must be at least 1");
  const std::size_t rank = schmidt(target_).rank();
  if (rank > d) {
    std::ostringstream os;
    os << "target Schmidt rank " << rank << " exceeds d=" << d
       << "; not reachable from a d-dimensional maximally entangled state";
    throw DomainError(os.str());
  }
  const Cor4Decomposition cor = corollary4_decompose(target_, ProbVector::uniform(d), tol);
  alice_basis_ = cor.basis_a;

  std::vector<StateVector> phis;
  phis.reserve(d);
  for (const ComplexVector& v : cor.states_b) phis.emplace_back(v, tol.norm);

  // Σ_i |i_A'⟩|i⟩ / √d: Alice's Schmidt basis is the one the target is
  // written in.
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(target_.dim_a()),
                                        static_cast<Eigen::Index>(target_.dim_b()));
  m.leftCols(static_cast<Eigen::Index>(d)) = alice_basis_ / std::sqrt(static_cast<double>(d));
  initial_ = BipartiteState(std::move(m));

  meas_ = build_measurement(phis, d);
  dist_ = outcome_distribution(meas_, initial_);
}

ProtocolTranscript Protocol::run_branch(const WeylPair& outcome) const {
  if (outcome.d != d_) throw ValidationError("run_branch: outcome has the wrong d");
  const ComplexMatrix& e = meas_.op(outcome);
  ComplexMatrix post = initial_.amplitudes() * e.transpose();
  const double prob = post.squaredNorm();
  post /= std::sqrt(prob);

  // X^s Z^{-t} in Alice's basis, identity on its complement.
  const ComplexMatrix x = shift_op(d_);
  const ComplexMatrix z_inv = clock_op(d_).adjoint();
  const ComplexMatrix local = matrix_power(x, outcome.s) * matrix_power(z_inv, outcome.t);
  const auto na = static_cast<Eigen::Index>(target_.dim_a());
  const ComplexMatrix correction = alice_basis_ * local * alice_basis_.adjoint() +
                                   (ComplexMatrix::Identity(na, na) -
                                    alice_basis_ * alice_basis_.adjoint());
  const BipartiteState final_state(fix_global_phase(ComplexMatrix(correction * post)));

  const CommCost cost = comm_cost(d_);
  std::ostringstream corr;
  corr << "X^" << outcome.s << " Z^" << (outcome.t == 0 ? "" : "-") << outcome.t
       << " on Alice (Schmidt basis)";
  return ProtocolTranscript{
      .d = d_,
      .seed = 0,
      .outcome = outcome,
      .outcome_probability = prob,
      .bits_sent = cost.bits,
      .baseline_bits = cost.baseline,
      .correction = corr.str(),
      .initial_state = initial_,
      .target_state = target_,
      .final_state = final_state,
      .fidelity = fidelity(target_, final_state),
      .completeness_error = meas_.completeness_error(),
  };
}

ProtocolTranscript Protocol::run(std::uint64_t seed) const {
  SplitMix64 rng(seed);
  const double u = rng.uniform();
  double cum = 0.0;
  std::size_t chosen = dist_.size() - 1;
  for (std::size_t k = 0; k < dist_.size(); ++k) {
    cum += dist_[k];
    if (u < cum) {
      chosen = k;
      break;
    }
  }
  ProtocolTranscript t = run_branch(WeylPair(d_, chosen / d_, chosen % d_));
  t.seed = seed;
  return t;
}

ProtocolTranscript run_protocol(const BipartiteState& target, std::size_t d, std::uint64_t seed) {
  return Protocol(target, d).run(seed);
}

std::vector<ProtocolTranscript> run_protocol_exhaustive(const BipartiteState& target,
                                                        std::size_t d) {
  const Protocol p(target, d);
  std::vector<ProtocolTranscript> out;
  out.reserve(d * d);
  for (std::size_t s = 0; s < d; ++s)
    for (std::size_t t = 0; t < d; ++t) out.push_back(p.run_branch(WeylPair(d, s, t)));
  return out;
}

}  // namespace qens
