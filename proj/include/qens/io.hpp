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

// JSON file format. Every document is an object with a "kind" tag; complex
// numbers are [re, im] pairs. See docs/file-format.md.

#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "json.hpp"
#include "qens/bipartite.hpp"
#include "qens/ensembles.hpp"
#include "qens/errors.hpp"
#include "qens/majorize.hpp"
#include "qens/numkernel.hpp"

namespace qens::io {

using json = nlohmann::json;

/// Malformed file: unreadable, not JSON, or missing/mistyped fields. The
/// message carries the path and the offending field.
class InputError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

using Value = std::variant<ProbVector, DensityMatrix, ComplexMatrix, BipartiteState, Ensemble>;

struct ParsedInput {
  std::string path;
  std::string kind;
  std::string sha256;  // hex digest of the file bytes
  Value value;
};

/// Reads and validates one input file. Throws InputError for parse
/// problems and ValidationError when a domain invariant fails.
ParsedInput parse_input(const std::string& path, const Tolerances& tol = {});

/// Same, from an already-parsed document. `where` prefixes error messages.
Value parse_value(const json& doc, const Tolerances& tol = {}, std::string_view where = "input");

std::string sha256_hex(std::string_view bytes);

json complex_to_json(Complex z);
json to_json(const ProbVector& p);
json to_json(const DensityMatrix& rho);
json matrix_to_json(const ComplexMatrix& m);
json matrix_to_json(const RealMatrix& m);
json to_json(const BipartiteState& psi);
json to_json(const Ensemble& e);
json state_to_json(const ComplexVector& v);

}  // namespace qens::io
