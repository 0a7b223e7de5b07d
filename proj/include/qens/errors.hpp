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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qens {

/// Malformed input: a value violates a type invariant (shape, Hermiticity,
/// normalization, ...). The CLI maps this class to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Well-formed input that the mathematics rejects (e.g. an incompatible
/// probability vector). The CLI maps this class to exit code 1.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// x is not majorized by y. Carries the first failing partial sum.
class MajorizationError : public DomainError {
 public:
  /// k is 1-based; k == dim means the totals disagree.
  MajorizationError(std::size_t k, double lhs, double rhs, bool totals);

  std::size_t k() const { return k_; }
  double lhs() const { return lhs_; }
  double rhs() const { return rhs_; }
  bool totals_mismatch() const { return totals_; }

 private:
  std::size_t k_;
  double lhs_;
  double rhs_;
  bool totals_;
};

}  // namespace qens
