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

#include "qens/majorize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qens/errors.hpp"

namespace qens {

namespace {

constexpr double kSchurSlack = 1e-9;

std::vector<std::size_t> decreasing_order(std::span<const double> v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  return idx;
}

std::vector<double> pad(std::span<const double> v, std::size_t n) {
  std::vector<double> out(v.begin(), v.end());
  out.resize(n, 0.0);
  return out;
}

}  // namespace

MajorizationError::MajorizationError(std::size_t k, double lhs, double rhs, bool totals)
    : DomainError(totals ? "majorization violated: totals differ (" + real_str(lhs) + " vs " +
                               real_str(rhs) + ")"
                         : "majorization violated at k=" + std::to_string(k) + ": " +
                               real_str(lhs) + " > " + real_str(rhs)),
      k_(k),
      lhs_(lhs),
      rhs_(rhs),
      totals_(totals) {}

ProbVector::ProbVector(std::vector<double> weights, double tol) : w_(std::move(weights)) {
  if (w_.empty()) throw ValidationError("probability vector: must be non-empty");
  double sum = 0.0;
  for (std::size_t i = 0; i < w_.size(); ++i) {
    double& v = w_[i];
    if (!std::isfinite(v)) throw ValidationError("probability vector: entries must be finite");
    if (v < -tol)
      throw ValidationError("probability vector: entry " + std::to_string(i) + " is " +
                            real_str(v) + " < 0");
    if (v < 0.0) v = 0.0;
    sum += v;
  }
  if (std::abs(sum - 1.0) > tol)
    throw ValidationError("probability vector: sum " + real_str(sum) + " differs from 1 by more than " +
                          real_str(tol));
}

ProbVector ProbVector::uniform(std::size_t m) {
  if (m == 0) throw ValidationError("probability vector: must be non-empty");
  return ProbVector(Unchecked{}, std::vector<double>(m, 1.0 / static_cast<double>(m)));
}

ProbVector ProbVector::padded(std::size_t n) const {
  if (n < w_.size()) throw ValidationError("probability vector: cannot pad to a shorter length");
  return ProbVector(Unchecked{}, pad(w_, n));
}

std::vector<double> ProbVector::sorted_decreasing() const {
  std::vector<double> s = w_;
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

std::string MajorizationCheck::reason() const {
  if (holds) return {};
  if (totals_mismatch)
    return "majorization violated: totals differ (" + real_str(lhs) + " vs " + real_str(rhs) + ")";
  return "majorization violated at k=" + std::to_string(failing_k) + ": " + real_str(lhs) + " > " +
         real_str(rhs);
}

MajorizationCheck check_majorization(const ProbVector& x, const ProbVector& y, double tol) {
  MajorizationCheck out;
  out.x_len = x.size();
  out.y_len = y.size();
  out.dim = std::max(x.size(), y.size());
  std::vector<double> xs = x.sorted_decreasing();
  std::vector<double> ys = y.sorted_decreasing();
  xs.resize(out.dim, 0.0);
  ys.resize(out.dim, 0.0);
  double sx = 0.0, sy = 0.0;
  for (std::size_t k = 0; k < out.dim; ++k) {
    sx += xs[k];
    sy += ys[k];
    if (k + 1 < out.dim && sx > sy + tol) {
      out.holds = false;
      out.failing_k = k + 1;
      out.lhs = sx;
      out.rhs = sy;
      return out;
    }
  }
  if (std::abs(sx - sy) > tol) {
    out.holds = false;
    out.failing_k = out.dim;
    out.lhs = sx;
    out.rhs = sy;
    out.totals_mismatch = true;
  }
  return out;
}

bool is_majorized_by(const ProbVector& x, const ProbVector& y, double tol) {
  return check_majorization(x, y, tol).holds;
}

void require_majorized(const ProbVector& x, const ProbVector& y, double tol) {
  MajorizationCheck c = check_majorization(x, y, tol);
  if (!c.holds) throw MajorizationError(c.failing_k, c.lhs, c.rhs, c.totals_mismatch);
}

RealMatrix TTransform::matrix(std::size_t dim) const {
  const auto n = static_cast<Eigen::Index>(dim);
  const auto a = static_cast<Eigen::Index>(i), b = static_cast<Eigen::Index>(k);
  RealMatrix m = RealMatrix::Identity(n, n);
  m(a, a) = t;
  m(a, b) = 1.0 - t;
  m(b, a) = 1.0 - t;
  m(b, b) = t;
  return m;
}

void TTransform::apply(std::span<double> v) const {
  const double a = v[i], b = v[k];
  v[i] = t * a + (1.0 - t) * b;
  v[k] = (1.0 - t) * a + t * b;
}

RealMatrix TChain::sorted_matrix() const {
  const auto n = static_cast<Eigen::Index>(dim);
  RealMatrix m = RealMatrix::Identity(n, n);
  for (const TTransform& tr : transforms) m = tr.matrix(dim) * m;
  return m;
}

RealMatrix TChain::matrix() const {
  const RealMatrix m = sorted_matrix();
  RealMatrix d(m.rows(), m.cols());
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      d(static_cast<Eigen::Index>(target_permutation[i]),
        static_cast<Eigen::Index>(source_permutation[j])) =
          m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return d;
}

TChain t_transform_chain(const ProbVector& x, const ProbVector& y, double tol) {
  require_majorized(x, y, tol);
  TChain chain;
  chain.dim = std::max(x.size(), y.size());
  chain.x_len = x.size();
  chain.y_len = y.size();
  const std::size_t n = chain.dim;
  const std::vector<double> xp = pad(x.weights(), n);
  const std::vector<double> yp = pad(y.weights(), n);
  chain.source_permutation = decreasing_order(yp);
  const std::vector<std::size_t> x_order = decreasing_order(xp);

  std::vector<double> work(n);
  for (std::size_t j = 0; j < n; ++j) work[j] = yp[chain.source_permutation[j]];

  std::vector<std::size_t> active(n);
  std::iota(active.begin(), active.end(), std::size_t{0});
  std::vector<std::size_t> rank_at(n, 0);

  for (std::size_t r = 0; r + 1 < n; ++r) {
    const double target = xp[x_order[r]];
    std::stable_sort(active.begin(), active.end(),
                     [&](std::size_t a, std::size_t b) { return work[a] > work[b]; });
    const std::size_t top = active.front();
    // Largest k with work[k] <= target <= work[k-1] in the sorted active list.
    std::size_t kk = 0;
    for (std::size_t k = active.size() - 1; k >= 1; --k) {
      if (work[active[k]] <= target && target <= work[active[k - 1]]) {
        kk = k;
        break;
      }
    }
    if (kk == 0) kk = target > work[top] ? 1 : active.size() - 1;  // rounding only
    const std::size_t low = active[kk];
    const double denom = work[top] - work[low];
    if (denom > 0.0) {
      const double t = std::clamp((target - work[low]) / denom, 0.0, 1.0);
      if (t < 1.0) {
        TTransform tr{top, low, t};
        tr.apply(work);
        chain.transforms.push_back(tr);
      }
    }
    rank_at[top] = r;
    active.erase(active.begin());
  }
  if (!active.empty()) rank_at[active.front()] = n - 1;

  chain.target_permutation.resize(n);
  for (std::size_t j = 0; j < n; ++j) chain.target_permutation[j] = x_order[rank_at[j]];
  return chain;
}

ProbVector apply_t_chain(const TChain& chain, const ProbVector& y) {
  if (y.size() > chain.dim)
    throw ValidationError("apply_t_chain: vector of length " + std::to_string(y.size()) +
                          " exceeds chain dimension " + std::to_string(chain.dim));
  if (chain.source_permutation.size() != chain.dim ||
      chain.target_permutation.size() != chain.dim)
    throw ValidationError("apply_t_chain: permutation length does not match chain dimension");
  const std::vector<double> yp = pad(y.weights(), chain.dim);
  std::vector<double> work(chain.dim);
  for (std::size_t j = 0; j < chain.dim; ++j) work[j] = yp[chain.source_permutation[j]];
  for (const TTransform& tr : chain.transforms) {
    if (tr.i >= chain.dim || tr.k >= chain.dim || tr.i == tr.k)
      throw ValidationError("apply_t_chain: transform indices out of range");
    tr.apply(work);
  }
  std::vector<double> out(chain.dim);
  for (std::size_t j = 0; j < chain.dim; ++j) out[chain.target_permutation[j]] = work[j];
  return ProbVector(std::move(out));
}

HornWitness horn_orthogonal(const ProbVector& x, const ProbVector& y, double tol) {
  HornWitness h;
  h.chain = t_transform_chain(x, y, tol);
  const std::size_t n = h.chain.dim;
  const auto nn = static_cast<Eigen::Index>(n);

  // W acts as the identity on coordinate `a` of every transform applied
  // before it, so each step only rewrites row a and columns a, b.
  RealMatrix w = RealMatrix::Identity(nn, nn);
  for (auto it = h.chain.transforms.rbegin(); it != h.chain.transforms.rend(); ++it) {
    const auto a = static_cast<Eigen::Index>(it->i);
    const auto b = static_cast<Eigen::Index>(it->k);
    const double st = std::sqrt(it->t);
    const double sc = std::sqrt(1.0 - it->t);
    const RealVector ub = w.col(b);
    for (Eigen::Index i = 0; i < nn; ++i) {
      if (i == a) continue;
      w(i, a) = sc * ub[i];
      w(i, b) = st * ub[i];
    }
    w(a, a) = st;
    w(a, b) = -sc;
  }

  h.W.resize(nn, nn);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      h.W(static_cast<Eigen::Index>(h.chain.target_permutation[i]),
          static_cast<Eigen::Index>(h.chain.source_permutation[j])) =
          w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  h.D = h.W.cwiseAbs2();
  return h;
}

RealMatrix unitary_to_stochastic(const ComplexMatrix& u, double tol) {
  if (u.rows() != u.cols() || u.rows() == 0)
    throw ValidationError("unitary_to_stochastic: matrix must be square and non-empty");
  require_finite(u, "unitary_to_stochastic");
  const double defect =
      (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).norm();
  if (defect > tol)
    throw ValidationError("unitary_to_stochastic: ‖u†u - I‖_F = " + real_str(defect) +
                          " exceeds " + real_str(tol));
  return u.cwiseAbs2();
}

double doubly_stochastic_defect(const RealMatrix& d) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < d.rows(); ++i) worst = std::max(worst, std::abs(d.row(i).sum() - 1.0));
  for (Eigen::Index j = 0; j < d.cols(); ++j) worst = std::max(worst, std::abs(d.col(j).sum() - 1.0));
  if (d.size() > 0) worst = std::max(worst, -std::min(0.0, d.minCoeff()));
  return worst;
}

std::string_view to_string(SchurFunction f) {
  switch (f) {
    case SchurFunction::kNegEntropy:
      return "neg_entropy";
    case SchurFunction::kPowerSum:
      return "power_sum";
    case SchurFunction::kNegProduct:
      return "neg_product";
    case SchurFunction::kNegMax:
      return "neg_max";
  }
  return "unknown";
}

SchurFunction parse_schur_function(std::string_view name) {
  for (SchurFunction f : {SchurFunction::kNegEntropy, SchurFunction::kPowerSum,
                          SchurFunction::kNegProduct, SchurFunction::kNegMax})
    if (to_string(f) == name) return f;
  throw ValidationError("unknown Schur function '" + std::string(name) + "'");
}

double schur_value(SchurFunction f, std::span<const double> x, std::optional<double> k) {
  switch (f) {
    case SchurFunction::kNegEntropy: {
      double s = 0.0;
      for (double v : x)
        if (v > 0.0) s += v * std::log(v);
      return s;
    }
    case SchurFunction::kPowerSum: {
      if (!k) throw ValidationError("power_sum requires an exponent k >= 1");
      if (!(*k >= 1.0)) throw ValidationError("power_sum exponent k = " + real_str(*k) + " < 1");
      double s = 0.0;
      for (double v : x) s += std::pow(v, *k);
      return s;
    }
    case SchurFunction::kNegProduct: {
      double p = 1.0;
      for (double v : x) p *= v;
      return 0.0 - p;  // no -0 in reports
    }
    case SchurFunction::kNegMax:
      return x.empty() ? 0.0 : -*std::max_element(x.begin(), x.end());
  }
  throw ValidationError("unknown Schur function");
}

double schur_value(std::string_view name, std::span<const double> x, std::optional<double> k) {
  return schur_value(parse_schur_function(name), x, k);
}

const std::vector<ConvexScalar>& convex_scalar_registry() {
  static const std::vector<ConvexScalar> registry = {
      {"square", [](double v) { return v * v; }},
      {"xlogx", [](double v) { return v > 0.0 ? v * std::log(v) : 0.0; }},
      {"exp", [](double v) { return std::exp(v); }},
      {"neg_sqrt", [](double v) { return -std::sqrt(v); }},
      {"abs_centered", [](double v) { return std::abs(v - 0.5); }},
  };
  return registry;
}

SchurReport compare_schur(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = std::max(x.size(), y.size());
  const std::vector<double> xp = pad(x, n), yp = pad(y, n);
  SchurReport rep;
  auto add = [&](std::string name, double fx, double fy, bool convex) {
    SchurComparison c{std::move(name), fx, fy, convex, true};
    c.holds = convex ? fx <= fy + kSchurSlack : fx >= fy - kSchurSlack;
    rep.all_hold = rep.all_hold && c.holds;
    rep.comparisons.push_back(std::move(c));
  };
  add("neg_entropy", schur_value(SchurFunction::kNegEntropy, xp),
      schur_value(SchurFunction::kNegEntropy, yp), true);
  for (double k : {1.5, 2.0, 3.0}) {
    std::ostringstream name;
    name << "power_sum(k=" << k << ")";
    add(name.str(), schur_value(SchurFunction::kPowerSum, xp, k),
        schur_value(SchurFunction::kPowerSum, yp, k), true);
  }
  add("neg_product", schur_value(SchurFunction::kNegProduct, xp),
      schur_value(SchurFunction::kNegProduct, yp), true);
  // -max is monotone in the opposite direction; checked as f(x) >= f(y).
  add("neg_max", schur_value(SchurFunction::kNegMax, xp), schur_value(SchurFunction::kNegMax, yp),
      false);
  for (const ConvexScalar& g : convex_scalar_registry()) {
    double fx = 0.0, fy = 0.0;
    for (double v : xp) fx += g.fn(v);
    for (double v : yp) fy += g.fn(v);
    add("sum:" + g.name, fx, fy, true);
  }
  return rep;
}

SchurReport check_schur_inequalities(const ProbVector& x, const ProbVector& y, double tol) {
  require_majorized(x, y, tol);
  return compare_schur(x.weights(), y.weights());
}

}  // namespace qens
