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

// Majorization of probability vectors: the partial-sum predicate, chains of
// T-transforms taking y to x, the orthogonal W with (W∘W) y = x, and
// Schur-convex functions.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qens/numkernel.hpp"

namespace qens {

/// Nonnegative weights summing to one within `tol`. Entries in [-tol, 0)
/// are clipped to zero on construction; values are otherwise kept as given.
class ProbVector {
 public:
  explicit ProbVector(std::vector<double> weights, double tol = Tolerances{}.prob);

  /// (1/m, ..., 1/m).
  static ProbVector uniform(std::size_t m);

  std::size_t size() const { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }
  std::span<const double> weights() const { return w_; }
  const std::vector<double>& vec() const { return w_; }

  /// Copy extended with zeros to length n (n >= size()).
  ProbVector padded(std::size_t n) const;
  /// Entries in decreasing order.
  std::vector<double> sorted_decreasing() const;

 private:
  struct Unchecked {};
  ProbVector(Unchecked, std::vector<double> w) : w_(std::move(w)) {}

  std::vector<double> w_;
};

/// Outcome of the partial-sum test x ≺ y.
struct MajorizationCheck {
  bool holds = true;
  std::size_t dim = 0;       // common length after zero-padding
  std::size_t x_len = 0;     // lengths before padding
  std::size_t y_len = 0;
  std::size_t failing_k = 0; // 1-based; 0 when holds
  double lhs = 0.0;          // Σ_{i≤k} x↓_i at the failure
  double rhs = 0.0;          // Σ_{i≤k} y↓_i at the failure
  bool totals_mismatch = false;

  /// "majorization violated at k=1: 0.75 > 0.5" or "" when holds.
  std::string reason() const;
};

MajorizationCheck check_majorization(const ProbVector& x, const ProbVector& y,
                                     double tol = Tolerances{}.prob);

/// x ≺ y after zero-padding the shorter vector.
bool is_majorized_by(const ProbVector& x, const ProbVector& y, double tol = Tolerances{}.prob);

/// Throws MajorizationError describing the first failing partial sum.
void require_majorized(const ProbVector& x, const ProbVector& y, double tol = Tolerances{}.prob);

/// Identity except on coordinates (i, k), where it is [[t, 1-t], [1-t, t]].
struct TTransform {
  std::size_t i = 0;
  std::size_t k = 0;
  double t = 1.0;

  RealMatrix matrix(std::size_t dim) const;
  void apply(std::span<double> v) const;
};

/// T-transforms taking y to x.
///
/// Application order: y is padded to `dim`, permuted into decreasing order
/// (`work[j] = y[source_permutation[j]]`), the transforms are applied in
/// list order, and the result is scattered back
/// (`x[target_permutation[j]] = work[j]`).
///
/// Every transform fixes one coordinate for good: transform j writes its
/// final value at coordinate `i`, and later transforms never touch it.
struct TChain {
  std::size_t dim = 0;
  std::size_t x_len = 0;  // lengths before zero-padding
  std::size_t y_len = 0;
  std::vector<TTransform> transforms;
  std::vector<std::size_t> source_permutation;
  std::vector<std::size_t> target_permutation;

  /// Product of the transforms alone (acts on the sorted work vector).
  RealMatrix sorted_matrix() const;
  /// Doubly stochastic D with D y = x in the original orderings.
  RealMatrix matrix() const;
};

/// Builds the chain by repeatedly averaging the largest remaining entry of
/// y with the entry just below the next target value.
/// Throws MajorizationError unless x ≺ y within `tol`.
TChain t_transform_chain(const ProbVector& x, const ProbVector& y,
                         double tol = Tolerances{}.prob);

/// Applies `chain` to y (padded to chain.dim). Throws ValidationError when
/// y is longer than the chain dimension.
ProbVector apply_t_chain(const TChain& chain, const ProbVector& y);

/// Real orthogonal W whose entrywise square D maps y to x.
struct HornWitness {
  RealMatrix W;
  RealMatrix D;
  TChain chain;
};

/// Constructs W from the T-transform chain one transform at a time, from
/// the last applied back to the first, then conjugates in the permutations.
HornWitness horn_orthogonal(const ProbVector& x, const ProbVector& y,
                            double tol = Tolerances{}.prob);

/// D_ij = |u_ij|². Throws ValidationError unless u is unitary within `tol`
/// (Frobenius norm of u†u - I).
RealMatrix unitary_to_stochastic(const ComplexMatrix& u, double tol = 1e-9);

/// Max deviation of the row and column sums of D from one, and of negative
/// entries from zero.
double doubly_stochastic_defect(const RealMatrix& d);

// ---------------------------------------------------------------------------
// Schur-convex functions

enum class SchurFunction { kNegEntropy, kPowerSum, kNegProduct, kNegMax };

std::string_view to_string(SchurFunction f);
/// Accepts "neg_entropy", "power_sum", "neg_product", "neg_max".
SchurFunction parse_schur_function(std::string_view name);

/// neg_entropy: Σ x_i ln x_i with 0 ln 0 = 0. power_sum: Σ x_i^k, k >= 1.
/// neg_product: -Π x_i. neg_max: -max_i x_i.
double schur_value(SchurFunction f, std::span<const double> x,
                   std::optional<double> k = std::nullopt);
double schur_value(std::string_view name, std::span<const double> x,
                   std::optional<double> k = std::nullopt);

/// A convex scalar g; x ↦ Σ g(x_i) is Schur-convex.
struct ConvexScalar {
  std::string name;
  double (*fn)(double);
};

const std::vector<ConvexScalar>& convex_scalar_registry();

struct SchurComparison {
  std::string name;   // e.g. "power_sum(k=2)" or "sum:exp"
  double fx = 0.0;
  double fy = 0.0;
  bool convex = true; // false: monotone the other way, checked as fx >= fy
  bool holds = true;
};

struct SchurReport {
  std::vector<SchurComparison> comparisons;
  bool all_hold = true;
};

/// Evaluates every built-in function and every Σ g(x_i) from the convex
/// registry on x and y (zero-padded to equal length) and checks the
/// majorization order at slack 1e-9. Throws MajorizationError unless x ≺ y.
SchurReport check_schur_inequalities(const ProbVector& x, const ProbVector& y,
                                     double tol = Tolerances{}.prob);

/// Same comparisons without the precondition; used by reports that compare
/// a weight vector against a spectrum.
SchurReport compare_schur(std::span<const double> x, std::span<const double> y);

}  // namespace qens
