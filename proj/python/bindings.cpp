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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qens/bipartite.hpp"
#include "qens/ensembles.hpp"
#include "qens/errors.hpp"
#include "qens/jobs.hpp"
#include "qens/majorize.hpp"
#include "qens/protocol.hpp"

namespace py = pybind11;
using namespace qens;

namespace {

// Ensembles cross the boundary as lists of dicts {weight, state, synthetic}.
py::list ensemble_to_py(const Ensemble& e) {
  py::list out;
  for (const EnsembleMember& m : e.members()) {
    py::dict d;
    d["weight"] = m.weight;
    d["state"] = m.state;
    d["synthetic"] = m.synthetic;
    out.append(d);
  }
  return out;
}

Ensemble ensemble_from_py(const py::list& members, const Tolerances& tol) {
  std::vector<EnsembleMember> out;
  for (const py::handle& h : members) {
    EnsembleMember m;
    if (py::isinstance<py::dict>(h)) {
      const py::dict d = py::reinterpret_borrow<py::dict>(h);
      m.weight = d["weight"].cast<double>();
      m.state = d["state"].cast<ComplexVector>();
      if (d.contains("synthetic")) m.synthetic = d["synthetic"].cast<bool>();
    } else {
      const py::tuple t = h.cast<py::tuple>();
      m.weight = t[0].cast<double>();
      m.state = t[1].cast<ComplexVector>();
      if (t.size() > 2) m.synthetic = t[2].cast<bool>();
    }
    out.push_back(std::move(m));
  }
  return Ensemble(std::move(out), tol);
}

py::dict check_to_py(const MajorizationCheck& c) {
  py::dict d;
  d["holds"] = c.holds;
  d["dim"] = c.dim;
  d["failing_k"] = c.failing_k;
  d["lhs"] = c.lhs;
  d["rhs"] = c.rhs;
  d["totals_mismatch"] = c.totals_mismatch;
  d["reason"] = c.reason();
  return d;
}

py::list schur_to_py(const SchurReport& r) {
  py::list out;
  for (const SchurComparison& c : r.comparisons) {
    py::dict d;
    d["name"] = c.name;
    d["fx"] = c.fx;
    d["fy"] = c.fy;
    d["convex"] = c.convex;
    d["holds"] = c.holds;
    out.append(d);
  }
  return out;
}

py::dict transcript_to_py(const ProtocolTranscript& t) {
  py::dict d;
  d["d"] = t.d;
  d["seed"] = t.seed;
  d["outcome"] = py::make_tuple(t.outcome.s, t.outcome.t);
  d["outcome_probability"] = t.outcome_probability;
  d["bits_sent"] = t.bits_sent;
  d["baseline_bits"] = t.baseline_bits;
  d["correction"] = t.correction;
  d["initial_state"] = t.initial_state.amplitudes();
  d["target_state"] = t.target_state.amplitudes();
  d["final_state"] = t.final_state.amplitudes();
  d["fidelity"] = t.fidelity;
  d["completeness_error"] = t.completeness_error;
  return d;
}

Side parse_side(const std::string& s) {
  if (s == "A" || s == "a") return Side::kA;
  if (s == "B" || s == "b") return Side::kB;
  throw ValidationError("side must be 'A' or 'B', got '" + s + "'");
}

}  // namespace

PYBIND11_MODULE(_qens, m) {
  m.doc() = "Pure-state ensembles, majorization and entanglement transformation";
  m.attr("__version__") = QENS_VERSION;

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  auto& domain = py::register_exception<DomainError>(m, "DomainError", PyExc_RuntimeError);
  // Registered last so it is tried first; the instance carries k, lhs, rhs.
  static PyObject* major_type =
      py::register_exception<MajorizationError>(m, "MajorizationError", domain.ptr()).ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const MajorizationError& e) {
      py::object err = py::reinterpret_borrow<py::object>(major_type)(e.what());
      err.attr("k") = e.k();
      err.attr("lhs") = e.lhs();
      err.attr("rhs") = e.rhs();
      PyErr_SetObject(major_type, err.ptr());
    }
  });

  // majorization
  m.def("check_majorization",
        [](std::vector<double> x, std::vector<double> y, double tol) {
          return check_to_py(check_majorization(ProbVector(std::move(x), tol),
                                                ProbVector(std::move(y), tol), tol));
        },
        py::arg("x"), py::arg("y"), py::arg("tol") = 1e-9);
  m.def("is_majorized_by",
        [](std::vector<double> x, std::vector<double> y, double tol) {
          return is_majorized_by(ProbVector(std::move(x), tol), ProbVector(std::move(y), tol), tol);
        },
        py::arg("x"), py::arg("y"), py::arg("tol") = 1e-9, "x ≺ y after zero-padding.");
  m.def("t_transform_chain",
        [](std::vector<double> x, std::vector<double> y, double tol) {
          const TChain c = t_transform_chain(ProbVector(std::move(x), tol),
                                             ProbVector(std::move(y), tol), tol);
          py::list ts;
          for (const TTransform& t : c.transforms) ts.append(py::make_tuple(t.i, t.k, t.t));
          py::dict d;
          d["dim"] = c.dim;
          d["transforms"] = ts;
          d["source_permutation"] = c.source_permutation;
          d["target_permutation"] = c.target_permutation;
          d["matrix"] = c.matrix();
          return d;
        },
        py::arg("x"), py::arg("y"), py::arg("tol") = 1e-9,
        "T-transforms (i, k, t) taking y to x, with the permutations and product matrix.");
  m.def("horn_orthogonal",
        [](std::vector<double> x, std::vector<double> y, double tol) {
          const HornWitness h =
              horn_orthogonal(ProbVector(std::move(x), tol), ProbVector(std::move(y), tol), tol);
          return py::make_tuple(h.W, h.D);
        },
        py::arg("x"), py::arg("y"), py::arg("tol") = 1e-9,
        "Orthogonal W and D = W∘W with D y = x.");
  m.def("unitary_to_stochastic", &unitary_to_stochastic, py::arg("u"), py::arg("tol") = 1e-9);
  m.def("schur_value",
        [](const std::string& name, std::vector<double> x, std::optional<double> k) {
          return schur_value(name, x, k);
        },
        py::arg("name"), py::arg("x"), py::arg("k") = py::none());
  m.def("check_schur_inequalities",
        [](std::vector<double> x, std::vector<double> y, double tol) {
          return schur_to_py(check_schur_inequalities(ProbVector(std::move(x), tol),
                                                      ProbVector(std::move(y), tol), tol));
        },
        py::arg("x"), py::arg("y"), py::arg("tol") = 1e-9);

  // numerics
  m.def("hermitian_eig",
        [](const ComplexMatrix& h) {
          const Spectrum s = hermitian_eig(h);
          return py::make_tuple(s.values, s.vectors);
        },
        py::arg("h"), "Eigenvalues (decreasing) and eigenvectors as columns.");
  m.def("validate_density",
        [](const ComplexMatrix& rho, double tol) { return validate_density(rho, tol).matrix(); },
        py::arg("rho"), py::arg("tol") = 1e-9);
  m.def("random_density",
        [](std::size_t dim, std::size_t rank, std::uint64_t seed) {
          return random_density(dim, rank, seed).matrix();
        },
        py::arg("dim"), py::arg("rank"), py::arg("seed"));

  // ensembles
  m.def("density_from_ensemble",
        [](const py::list& e) { return density_from_ensemble(ensemble_from_py(e, {})).matrix(); },
        py::arg("ensemble"));
  m.def("synthesize_ensemble",
        [](const ComplexMatrix& rho, std::vector<double> p) {
          return ensemble_to_py(synthesize_ensemble(validate_density(rho, 1e-9), ProbVector(std::move(p))));
        },
        py::arg("rho"), py::arg("p"));
  m.def("uniform_ensemble",
        [](const ComplexMatrix& rho, std::size_t members) {
          return ensemble_to_py(uniform_ensemble(validate_density(rho, 1e-9), members));
        },
        py::arg("rho"), py::arg("m"));
  m.def("verify_ensemble",
        [](const py::list& e, const ComplexMatrix& rho, double tol) {
          const EnsembleVerification v =
              verify_ensemble(ensemble_from_py(e, {}), validate_density(rho, 1e-9), tol);
          py::dict d;
          d["reconstruction_error"] = v.reconstruction_error;
          d["majorization"] = check_to_py(v.majorization);
          d["max_norm_deviation"] = v.max_norm_deviation;
          d["passed"] = v.passed;
          return d;
        },
        py::arg("ensemble"), py::arg("rho"), py::arg("tol") = 1e-8);
  m.def("entropy_report",
        [](const py::list& e) {
          const EntropyReport r = entropy_report(ensemble_from_py(e, {}));
          py::dict d;
          d["shannon"] = r.shannon;
          d["von_neumann"] = r.von_neumann;
          d["holds"] = r.holds;
          d["schur"] = schur_to_py(r.schur);
          return d;
        },
        py::arg("ensemble"));

  // bipartite states are dim_a x dim_b amplitude matrices
  m.def("schmidt",
        [](const ComplexMatrix& amps) {
          const SchmidtDecomposition s = schmidt(BipartiteState(amps));
          py::dict d;
          d["coefficients"] = s.coefficients;
          d["basis_a"] = s.basis_a;
          d["basis_b"] = s.basis_b;
          return d;
        },
        py::arg("amplitudes"));
  m.def("reduced_density",
        [](const ComplexMatrix& amps, const std::string& side) {
          return reduced_density(BipartiteState(amps), parse_side(side)).matrix();
        },
        py::arg("amplitudes"), py::arg("side"));
  m.def("corollary4_decompose",
        [](const ComplexMatrix& amps, std::vector<double> q) {
          const Cor4Decomposition c = corollary4_decompose(BipartiteState(amps), ProbVector(std::move(q)));
          py::dict d;
          d["weights"] = c.weights;
          d["basis_a"] = c.basis_a;
          d["states_b"] = c.states_b;
          d["synthetic"] = c.synthetic;
          d["dim_a"] = c.dim_a;
          d["reconstruction"] = c.reconstruct();
          return d;
        },
        py::arg("amplitudes"), py::arg("q"));
  m.def("purify",
        [](const ComplexMatrix& rho, std::vector<double> w, const std::vector<ComplexVector>& states) {
          std::vector<StateVector> sv;
          for (const ComplexVector& v : states) sv.emplace_back(v);
          return purify(validate_density(rho, 1e-9), ProbVector(std::move(w)), sv).amplitudes();
        },
        py::arg("rho"), py::arg("weights"), py::arg("states"));
  m.def("relate_purifications",
        [](const ComplexMatrix& phi, const ComplexMatrix& psi) {
          return relate_purifications(BipartiteState(phi), BipartiteState(psi));
        },
        py::arg("phi"), py::arg("psi"));

  // protocol
  m.def("weyl_op", [](std::size_t d, std::size_t s, std::size_t t) { return weyl_op({d, s, t}); },
        py::arg("d"), py::arg("s"), py::arg("t"));
  m.def("weyl_twirl", &weyl_twirl, py::arg("a"), "Σ_{s,t} U†AU, which equals d·tr(A)·I.");
  m.def("comm_cost",
        [](std::size_t d) {
          const CommCost c = comm_cost(d);
          return py::make_tuple(c.bits, c.baseline);
        },
        py::arg("d"), "(bits, baseline_bits)");
  m.def("run_protocol",
        [](const ComplexMatrix& target, std::size_t d, std::uint64_t seed) {
          return transcript_to_py(run_protocol(BipartiteState(target), d, seed));
        },
        py::arg("target"), py::arg("d"), py::arg("seed") = 0);
  m.def("run_protocol_exhaustive",
        [](const ComplexMatrix& target, std::size_t d) {
          py::list out;
          for (const ProtocolTranscript& t : run_protocol_exhaustive(BipartiteState(target), d))
            out.append(transcript_to_py(t));
          return out;
        },
        py::arg("target"), py::arg("d"));

  // batch jobs, same reports as the command-line tool
  m.def("run_job",
        [](const std::string& command, std::vector<std::string> inputs, std::uint64_t seed,
           bool exhaustive, std::optional<std::size_t> d, std::optional<std::size_t> members) {
          const auto cmd = parse_command(command);
          if (!cmd) throw ValidationError("unknown command '" + command + "'");
          JobSpec spec;
          spec.command = *cmd;
          spec.inputs = std::move(inputs);
          spec.seed = seed;
          spec.exhaustive = exhaustive;
          spec.d = d;
          spec.members = members;
          const JobResult r = run_job(spec);
          return py::make_tuple(r.exit_code, r.report);
        },
        py::arg("command"), py::arg("inputs"), py::arg("seed") = 0, py::arg("exhaustive") = false,
        py::arg("d") = py::none(), py::arg("members") = py::none(),
        "Returns (exit_code, report_json).");
}
