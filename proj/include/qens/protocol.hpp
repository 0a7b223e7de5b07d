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

// Exact simulation of converting a maximally entangled pair of qudits into
// an arbitrary target pure state: Bob performs a d²-outcome measurement
// built from the Weyl operators X^s Z^t, sends (s, t) to Alice, and Alice
// undoes the twirl with X^s Z^{-t}.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qens/bipartite.hpp"
#include "qens/numkernel.hpp"

namespace qens {

/// Indices of U_{s,t} = X^s Z^t, both in [0, d).
struct WeylPair {
  std::size_t d = 1;
  std::size_t s = 0;
  std::size_t t = 0;

  WeylPair() = default;
  WeylPair(std::size_t d, std::size_t s, std::size_t t);

  /// Outcome index s * d + t.
  std::size_t index() const { return s * d + t; }
  bool operator==(const WeylPair&) const = default;
};

/// Cyclic shift X|j⟩ = |j+1 mod d⟩.
ComplexMatrix shift_op(std::size_t d);
/// Clock Z|j⟩ = ω^j |j⟩ with ω = exp(2πi/d).
ComplexMatrix clock_op(std::size_t d);
/// X^s Z^t.
ComplexMatrix weyl_op(const WeylPair& pair);

/// Measurement operators E_{s,t} on Bob's space, indexed by WeylPair::index.
struct MeasurementSet {
  std::size_t d = 0;
  std::size_t dim_b = 0;
  std::vector<ComplexMatrix> operators;

  const ComplexMatrix& op(const WeylPair& p) const { return operators[p.index()]; }
  /// ‖Σ E†E - I‖_F.
  double completeness_error() const;
};

/// E_{s,t} = E U_{s,t} with F = Σ_i |φ_i⟩⟨i| and E = F / √(d · tr F†F).
///
/// When dim_b > d the Weyl operators act on span{|0⟩..|d-1⟩}, and each
/// E_{s,t} additionally maps |d⟩..|dim_b-1⟩ by (1/d) J, where J is an
/// isometry onto the orthogonal complement of the range of F. That keeps
/// Σ E†E = I on the whole space with no cross terms.
///
/// Throws ValidationError unless there are exactly d unit states of
/// dimension dim_b >= d.
MeasurementSet build_measurement(const std::vector<StateVector>& states, std::size_t d);

/// ‖(I ⊗ E_{s,t})|ψ⟩‖² for every outcome.
std::vector<double> outcome_distribution(const MeasurementSet& meas, const BipartiteState& psi);

/// Σ_i |i⟩|i⟩ / √d in a dim_a x dim_b space (both >= d).
BipartiteState maximally_entangled(std::size_t d, std::size_t dim_a, std::size_t dim_b);

struct CommCost {
  std::size_t bits = 0;      // ⌈2 log₂ d⌉
  std::size_t baseline = 0;  // d - 1, the earlier protocol
};

CommCost comm_cost(std::size_t d);

/// splitmix64. Used for outcome sampling so transcripts are reproducible
/// across platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform();

 private:
  std::uint64_t state_;
};

struct ProtocolTranscript {
  std::size_t d = 0;
  std::uint64_t seed = 0;
  WeylPair outcome;
  double outcome_probability = 0.0;
  std::size_t bits_sent = 0;
  std::size_t baseline_bits = 0;
  std::string correction;  // e.g. "X^1 Z^-2 on Alice"
  BipartiteState initial_state;
  BipartiteState target_state;
  BipartiteState final_state;
  double fidelity = 0.0;
  double completeness_error = 0.0;
};

/// Everything about a run that does not depend on the outcome.
class Protocol {
 public:
  /// Throws DomainError if the Schmidt rank of `target` exceeds d. Both
  /// subsystems are enlarged to at least d by zero-padding.
  Protocol(const BipartiteState& target, std::size_t d, const Tolerances& tol = {});

  std::size_t d() const { return d_; }
  const MeasurementSet& measurement() const { return meas_; }
  const BipartiteState& initial_state() const { return initial_; }
  const BipartiteState& target() const { return target_; }
  /// Alice's orthonormal basis |i_A'⟩ (columns), in which her correction acts.
  const ComplexMatrix& alice_basis() const { return alice_basis_; }
  const std::vector<double>& distribution() const { return dist_; }

  /// Measurement branch (s, t) followed by Alice's correction.
  ProtocolTranscript run_branch(const WeylPair& outcome) const;
  /// Samples the outcome by inverse CDF with SplitMix64(seed).
  ProtocolTranscript run(std::uint64_t seed) const;

 private:
  std::size_t d_;
  BipartiteState target_;
  BipartiteState initial_;
  ComplexMatrix alice_basis_;
  MeasurementSet meas_;
  std::vector<double> dist_;
};

/// Protocol(target, d).run(seed).
ProtocolTranscript run_protocol(const BipartiteState& target, std::size_t d, std::uint64_t seed);

/// Every branch, in outcome-index order.
std::vector<ProtocolTranscript> run_protocol_exhaustive(const BipartiteState& target,
                                                        std::size_t d);

/// Σ_{s,t} U†_{s,t} A U_{s,t}. Equals d · tr(A) · I.
ComplexMatrix weyl_twirl(const ComplexMatrix& a);

}  // namespace qens
