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

#include "qens/io.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <sstream>

namespace qens::io {

namespace {

[[noreturn]] void fail(std::string_view where, const std::string& msg) {
  throw InputError(std::string(where) + ": " + msg);
}

const json& field(const json& obj, const char* name, std::string_view where) {
  auto it = obj.find(name);
  if (it == obj.end()) fail(where, std::string("missing field '") + name + "'");
  return *it;
}

double number(const json& v, std::string_view where) {
  if (!v.is_number()) fail(where, "expected a number, got " + std::string(v.type_name()));
  return v.get<double>();
}

std::size_t count(const json& v, std::string_view where) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    fail(where, "expected a non-negative integer");
  return v.get<std::size_t>();
}

Complex complex_from(const json& v, std::string_view where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (!v.is_array() || v.size() != 2) fail(where, "expected a complex number [re, im]");
  return {number(v[0], std::string(where) + "[0]"), number(v[1], std::string(where) + "[1]")};
}

ComplexVector vector_from(const json& v, std::string_view where) {
  if (!v.is_array()) fail(where, "expected an array");
  ComplexVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i)
    out[static_cast<Eigen::Index>(i)] =
        complex_from(v[i], std::string(where) + "[" + std::to_string(i) + "]");
  return out;
}

ComplexMatrix matrix_from(const json& rows_json, std::size_t rows, std::size_t cols,
                          std::string_view where) {
  if (!rows_json.is_array() || rows_json.size() != rows)
    fail(where, "expected " + std::to_string(rows) + " rows");
  ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string w = std::string(where) + "[" + std::to_string(i) + "]";
    const json& row = rows_json[i];
    if (!row.is_array() || row.size() != cols)
      fail(w, "expected " + std::to_string(cols) + " entries");
    for (std::size_t j = 0; j < cols; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          complex_from(row[j], w + "[" + std::to_string(j) + "]");
  }
  return m;
}

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  std::ostringstream os;
  os << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < len; ++i) os << std::setw(2) << static_cast<int>(digest[i]);
  return os.str();
}

Value parse_value(const json& doc, const Tolerances& tol, std::string_view where) {
  if (!doc.is_object()) fail(where, "top level must be an object");
  const json& kind_j = field(doc, "kind", where);
  if (!kind_j.is_string()) fail(where, "'kind' must be a string");
  const std::string kind = kind_j.get<std::string>();
  const std::string w(where);

  if (kind == "probvec") {
    const json& ws = field(doc, "weights", where);
    if (!ws.is_array()) fail(w + ".weights", "expected an array");
    std::vector<double> v;
    for (std::size_t i = 0; i < ws.size(); ++i)
      v.push_back(number(ws[i], w + ".weights[" + std::to_string(i) + "]"));
    return ProbVector(std::move(v), tol.prob);
  }
  if (kind == "density") {
    const std::size_t dim = count(field(doc, "dim", where), w + ".dim");
    return DensityMatrix::validate(matrix_from(field(doc, "entries", where), dim, dim, w + ".entries"),
                                   tol);
  }
  if (kind == "matrix") {
    const std::size_t rows = count(field(doc, "rows", where), w + ".rows");
    const std::size_t cols = count(field(doc, "cols", where), w + ".cols");
    ComplexMatrix m = matrix_from(field(doc, "entries", where), rows, cols, w + ".entries");
    require_finite(m, "matrix");
    return m;
  }
  if (kind == "bipartite") {
    const std::size_t da = count(field(doc, "dim_a", where), w + ".dim_a");
    const std::size_t db = count(field(doc, "dim_b", where), w + ".dim_b");
    const ComplexVector flat = vector_from(field(doc, "amplitudes", where), w + ".amplitudes");
    return BipartiteState::from_flat(da, db, flat, tol.norm);
  }
  if (kind == "ensemble") {
    const json& ms = field(doc, "members", where);
    if (!ms.is_array()) fail(w + ".members", "expected an array");
    std::vector<EnsembleMember> members;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const std::string mw = w + ".members[" + std::to_string(i) + "]";
      if (!ms[i].is_object()) fail(mw, "expected an object");
      EnsembleMember m;
      m.weight = number(field(ms[i], "weight", mw), mw + ".weight");
      m.state = vector_from(field(ms[i], "state", mw), mw + ".state");
      if (auto it = ms[i].find("synthetic"); it != ms[i].end()) {
        if (!it->is_boolean()) fail(mw + ".synthetic", "expected a boolean");
        m.synthetic = it->get<bool>();
      }
      members.push_back(std::move(m));
    }
    return Ensemble(std::move(members), tol);
  }
  fail(where, "unknown kind '" + kind + "'");
}

ParsedInput parse_input(const std::string& path, const Tolerances& tol) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string bytes = buf.str();
  json doc;
  try {
    doc = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": invalid JSON: " + e.what());
  }
  try {
    ParsedInput out{path, "", sha256_hex(bytes), parse_value(doc, tol, path)};
    out.kind = doc["kind"].get<std::string>();
    return out;
  } catch (const InputError&) {
    throw;
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json to_json(const ProbVector& p) {
  return {{"kind", "probvec"}, {"weights", p.vec()}};
}

namespace {

json entries(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

json to_json(const DensityMatrix& rho) {
  return {{"kind", "density"}, {"dim", rho.dim()}, {"entries", entries(rho.matrix())}};
}

json matrix_to_json(const ComplexMatrix& m) {
  return {{"kind", "matrix"}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries(m)}};
}

json matrix_to_json(const RealMatrix& m) { return matrix_to_json(ComplexMatrix(m.cast<Complex>())); }

json state_to_json(const ComplexVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(complex_to_json(v[i]));
  return a;
}

json to_json(const BipartiteState& psi) {
  return {{"kind", "bipartite"},
          {"dim_a", psi.dim_a()},
          {"dim_b", psi.dim_b()},
          {"amplitudes", state_to_json(psi.flat())}};
}

json to_json(const Ensemble& e) {
  json ms = json::array();
  for (const EnsembleMember& m : e.members()) {
    json j = {{"weight", m.weight}, {"state", state_to_json(m.state)}};
    if (m.synthetic) j["synthetic"] = true;
    ms.push_back(std::move(j));
  }
  return {{"kind", "ensemble"}, {"members", std::move(ms)}};
}

}  // namespace qens::io
