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

#include "qens/jobs.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <iostream>

#include "qens/bipartite.hpp"
#include "qens/ensembles.hpp"
#include "qens/io.hpp"
#include "qens/majorize.hpp"
#include "qens/protocol.hpp"

#ifndef QENS_VERSION
#define QENS_VERSION "0.0.0"
#endif

namespace qens {

namespace {

using io::json;

constexpr std::array<std::pair<Command, std::string_view>, 8> kCommands = {{
    {Command::kMajorizeCheck, "majorize-check"},
    {Command::kMajorizeDecompose, "majorize-decompose"},
    {Command::kEnsembleSynth, "ensemble-synth"},
    {Command::kEnsembleVerify, "ensemble-verify"},
    {Command::kSchmidt, "schmidt"},
    {Command::kCorollary4, "corollary4"},
    {Command::kProtocolRun, "protocol-run"},
    {Command::kSchurReport, "schur-report"},
}};

/// Thrown for a job whose inputs are individually valid but do not fit the
/// command (wrong count or kinds).
class UsageError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

struct Inputs {
  std::vector<io::ParsedInput> items;

  std::size_t count(std::string_view kind) const {
    return static_cast<std::size_t>(std::count_if(
        items.begin(), items.end(), [&](const io::ParsedInput& p) { return p.kind == kind; }));
  }

  /// The n-th input of the given kind, in command-line order.
  template <typename T>
  const T& get(std::string_view kind, std::size_t n = 0) const {
    for (const io::ParsedInput& p : items)
      if (p.kind == kind && n-- == 0) return std::get<T>(p.value);
    throw UsageError("missing input of kind '" + std::string(kind) + "'");
  }

  void expect(std::initializer_list<std::pair<std::string_view, std::size_t>> wanted) const {
    std::size_t total = 0;
    for (const auto& [kind, n] : wanted) {
      if (count(kind) != n)
        throw UsageError("expected " + std::to_string(n) + " input(s) of kind '" +
                         std::string(kind) + "', got " + std::to_string(count(kind)));
      total += n;
    }
    if (items.size() != total)
      throw UsageError("expected " + std::to_string(total) + " input(s), got " +
                       std::to_string(items.size()));
  }
};

json tolerances_json(const Tolerances& t) {
  return {{"herm", t.herm}, {"trace", t.trace}, {"psd", t.psd}, {"orth", t.orth},
          {"rec", t.rec},   {"norm", t.norm},   {"major", t.prob}};
}

json check_json(const MajorizationCheck& c) {
  json j = {{"majorized", c.holds}, {"dim", c.dim}, {"x_len", c.x_len}, {"y_len", c.y_len}};
  if (!c.holds) {
    j["failing_k"] = c.failing_k;
    j["lhs"] = c.lhs;
    j["rhs"] = c.rhs;
    j["totals_mismatch"] = c.totals_mismatch;
    j["reason"] = c.reason();
  }
  return j;
}

json chain_json(const TChain& c) {
  json ts = json::array();
  for (const TTransform& t : c.transforms) ts.push_back({{"i", t.i}, {"k", t.k}, {"t", t.t}});
  return {{"dim", c.dim},
          {"x_len", c.x_len},
          {"y_len", c.y_len},
          {"transforms", ts},
          {"source_permutation", c.source_permutation},
          {"target_permutation", c.target_permutation}};
}

json schur_json(const SchurReport& r) {
  json cs = json::array();
  for (const SchurComparison& c : r.comparisons)
    cs.push_back({{"name", c.name},
                  {"f_x", c.fx},
                  {"f_y", c.fy},
                  {"direction", c.convex ? "f(x) <= f(y)" : "f(x) >= f(y)"},
                  {"holds", c.holds}});
  return {{"comparisons", cs}, {"all_hold", r.all_hold}};
}

json verification_json(const EnsembleVerification& v) {
  return {{"reconstruction_error", v.reconstruction_error},
          {"majorization", check_json(v.majorization)},
          {"norm_deviations", v.norm_deviations},
          {"max_norm_deviation", v.max_norm_deviation},
          {"passed", v.passed}};
}

json entropy_json(const EntropyReport& r) {
  return {{"shannon", r.shannon},
          {"von_neumann", r.von_neumann},
          {"shannon_ge_von_neumann", r.holds},
          {"schur", schur_json(r.schur)}};
}

json transcript_json(const ProtocolTranscript& t) {
  return {{"d", t.d},
          {"seed", t.seed},
          {"outcome", {{"s", t.outcome.s}, {"t", t.outcome.t}}},
          {"outcome_probability", t.outcome_probability},
          {"bits_sent", t.bits_sent},
          {"baseline_bits", t.baseline_bits},
          {"correction", t.correction},
          {"initial_state", io::to_json(t.initial_state)},
          {"target_state", io::to_json(t.target_state)},
          {"final_state", io::to_json(t.final_state)},
          {"fidelity", t.fidelity},
          {"completeness_error", t.completeness_error}};
}

struct Outcome {
  int exit_code = kExitOk;
  std::string reason;
  json result = json::object();
};

Outcome majorize_check(const Inputs& in, const JobSpec& spec) {
  in.expect({{"probvec", 2}});
  const MajorizationCheck c = check_majorization(in.get<ProbVector>("probvec", 0),
                                                 in.get<ProbVector>("probvec", 1), spec.tol.prob);
  Outcome o;
  o.result = check_json(c);
  if (!c.holds) {
    o.exit_code = kExitRejected;
    o.reason = c.reason();
  }
  return o;
}

Outcome majorize_decompose(const Inputs& in, const JobSpec& spec) {
  in.expect({{"probvec", 2}});
  const ProbVector& x = in.get<ProbVector>("probvec", 0);
  const ProbVector& y = in.get<ProbVector>("probvec", 1);
  const HornWitness h = horn_orthogonal(x, y, spec.tol.prob);
  const auto n = h.W.rows();
  const RealVector yv = Eigen::Map<const RealVector>(y.padded(h.chain.dim).vec().data(), n);
  const RealVector xv = Eigen::Map<const RealVector>(x.padded(h.chain.dim).vec().data(), n);
  Outcome o;
  o.result = {{"chain", chain_json(h.chain)},
              {"chain_length", h.chain.transforms.size()},
              {"W", io::matrix_to_json(h.W)},
              {"D", io::matrix_to_json(h.D)},
              {"orthogonality_error", (h.W * h.W.transpose() - RealMatrix::Identity(n, n)).norm()},
              {"doubly_stochastic_defect", doubly_stochastic_defect(h.D)},
              {"mapping_error", (h.D * yv - xv).cwiseAbs().maxCoeff()},
              {"chain_image", io::to_json(apply_t_chain(h.chain, y))}};
  return o;
}

Outcome ensemble_synth(const Inputs& in, const JobSpec& spec) {
  Ensemble e = [&] {
    if (spec.members) {
      in.expect({{"density", 1}});
      return uniform_ensemble(in.get<DensityMatrix>("density"), *spec.members, spec.tol);
    }
    in.expect({{"density", 1}, {"probvec", 1}});
    return synthesize_ensemble(in.get<DensityMatrix>("density"), in.get<ProbVector>("probvec"),
                               spec.tol);
  }();
  const DensityMatrix& rho = in.get<DensityMatrix>("density");
  const EnsembleVerification v = verify_ensemble(e, rho, spec.tol.rec);
  Outcome o;
  o.result = {{"ensemble", io::to_json(e)},
              {"verification", verification_json(v)},
              {"entropy", entropy_json(entropy_report(e))}};
  return o;
}

Outcome ensemble_verify(const Inputs& in, const JobSpec& spec) {
  in.expect({{"ensemble", 1}, {"density", 1}});
  const EnsembleVerification v =
      verify_ensemble(in.get<Ensemble>("ensemble"), in.get<DensityMatrix>("density"), spec.tol.rec);
  Outcome o;
  o.result = verification_json(v);
  if (!v.passed) {
    o.exit_code = kExitRejected;
    std::ostringstream os;
    os << "ensemble does not reproduce the density matrix: reconstruction error "
       << real_str(v.reconstruction_error) << ", max norm deviation "
       << real_str(v.max_norm_deviation);
    if (!v.majorization.holds) os << ", " << v.majorization.reason();
    o.reason = os.str();
  }
  return o;
}

Outcome schmidt_job(const Inputs& in, const JobSpec& spec) {
  in.expect({{"bipartite", 1}});
  const BipartiteState& psi = in.get<BipartiteState>("bipartite");
  const SchmidtDecomposition s = schmidt(psi);
  Outcome o;
  o.result = {{"coefficients", io::to_json(s.probabilities())},
              {"basis_a", io::matrix_to_json(s.basis_a)},
              {"basis_b", io::matrix_to_json(s.basis_b)},
              {"reduced_a", io::to_json(reduced_density(psi, Side::kA, spec.tol))},
              {"reduced_b", io::to_json(reduced_density(psi, Side::kB, spec.tol))},
              {"reconstruction_error", frobenius_distance(s.reconstruct(), psi.amplitudes())}};
  return o;
}

Outcome corollary4_job(const Inputs& in, const JobSpec& spec) {
  in.expect({{"bipartite", 1}, {"probvec", 1}});
  const BipartiteState& psi = in.get<BipartiteState>("bipartite");
  const Cor4Decomposition c = corollary4_decompose(psi, in.get<ProbVector>("probvec"), spec.tol);
  json states = json::array();
  for (const ComplexVector& v : c.states_b) states.push_back(io::state_to_json(v));
  Outcome o;
  o.result = {{"weights", io::to_json(ProbVector(c.weights))},
              {"dim_a", c.dim_a},
              {"basis_a", io::matrix_to_json(c.basis_a)},
              {"states_b", states},
              {"synthetic", c.synthetic},
              {"reconstruction_error",
               frobenius_distance(c.reconstruct(), psi.embed_a(c.dim_a).amplitudes())}};
  return o;
}

Outcome protocol_job(const Inputs& in, const JobSpec& spec) {
  in.expect({{"bipartite", 1}});
  const BipartiteState& target = in.get<BipartiteState>("bipartite");
  const std::size_t d = spec.d.value_or(target.dim_a());
  const Protocol p(target, d, spec.tol);
  Outcome o;
  const CommCost cost = comm_cost(d);
  o.result = {{"d", d},
              {"comm_cost", {{"bits", cost.bits}, {"baseline_bits", cost.baseline}}},
              {"outcome_distribution", p.distribution()},
              {"transcript", transcript_json(p.run(spec.seed))}};
  if (spec.exhaustive) {
    json branches = json::array();
    double min_fid = 1.0;
    for (std::size_t s = 0; s < d; ++s)
      for (std::size_t t = 0; t < d; ++t) {
        const ProtocolTranscript tr = p.run_branch(WeylPair(d, s, t));
        min_fid = std::min(min_fid, tr.fidelity);
        branches.push_back({{"s", s},
                            {"t", t},
                            {"probability", tr.outcome_probability},
                            {"fidelity", tr.fidelity}});
      }
    o.result["branches"] = branches;
    o.result["min_fidelity"] = min_fid;
  }
  return o;
}

Outcome schur_job(const Inputs& in, const JobSpec& spec) {
  Outcome o;
  if (in.count("ensemble") == 1) {
    in.expect({{"ensemble", 1}});
    const EntropyReport r = entropy_report(in.get<Ensemble>("ensemble"));
    o.result = entropy_json(r);
    if (!r.holds || !r.schur.all_hold) {
      o.exit_code = kExitRejected;
      o.reason = "an entropy or Schur inequality is violated";
    }
    return o;
  }
  in.expect({{"probvec", 2}});
  o.result = schur_json(check_schur_inequalities(in.get<ProbVector>("probvec", 0),
                                                 in.get<ProbVector>("probvec", 1), spec.tol.prob));
  return o;
}

Outcome dispatch(const Inputs& in, const JobSpec& spec) {
  switch (spec.command) {
    case Command::kMajorizeCheck:
      return majorize_check(in, spec);
    case Command::kMajorizeDecompose:
      return majorize_decompose(in, spec);
    case Command::kEnsembleSynth:
      return ensemble_synth(in, spec);
    case Command::kEnsembleVerify:
      return ensemble_verify(in, spec);
    case Command::kSchmidt:
      return schmidt_job(in, spec);
    case Command::kCorollary4:
      return corollary4_job(in, spec);
    case Command::kProtocolRun:
      return protocol_job(in, spec);
    case Command::kSchurReport:
      return schur_job(in, spec);
  }
  throw UsageError("unknown command");
}

}  // namespace

std::string_view to_string(Command c) {
  for (const auto& [cmd, name] : kCommands)
    if (cmd == c) return name;
  return "unknown";
}

std::optional<Command> parse_command(std::string_view name) {
  for (const auto& [cmd, n] : kCommands)
    if (n == name) return cmd;
  return std::nullopt;
}

const std::vector<std::string_view>& command_names() {
  static const std::vector<std::string_view> names = [] {
    std::vector<std::string_view> v;
    for (const auto& [cmd, name] : kCommands) v.push_back(name);
    return v;
  }();
  return names;
}

JobResult run_job(const JobSpec& spec) {
  json report = {{"tool", "qens"},
                 {"version", QENS_VERSION},
                 {"command", to_string(spec.command)},
                 {"tolerances", tolerances_json(spec.tol)}};
  if (spec.command == Command::kProtocolRun) {
    report["seed"] = spec.seed;
    report["exhaustive"] = spec.exhaustive;
  }

  Outcome out;
  std::string status;
  json inputs = json::array();
  try {
    Inputs in;
    for (const std::string& path : spec.inputs) {
      in.items.push_back(io::parse_input(path, spec.tol));
      inputs.push_back({{"path", path},
                        {"kind", in.items.back().kind},
                        {"sha256", in.items.back().sha256}});
    }
    out = dispatch(in, spec);
    status = out.exit_code == kExitOk ? "ok" : "rejected";
  } catch (const ValidationError& e) {
    out = Outcome{kExitInputError, e.what(), json::object()};
    status = "input_error";
  } catch (const DomainError& e) {
    out = Outcome{kExitRejected, e.what(), json::object()};
    status = "rejected";
  } catch (const std::exception& e) {
    out = Outcome{kExitInputError, std::string("unexpected error: ") + e.what(), json::object()};
    status = "input_error";
  }

  report["inputs"] = inputs;
  report["status"] = status;
  report["exit_code"] = out.exit_code;
  if (!out.reason.empty()) report["reason"] = out.reason;
  report["result"] = out.result;
  return {out.exit_code, report.dump(2) + "\n"};
}

int run_job_and_write(const JobSpec& spec) {
  const JobResult r = run_job(spec);
  if (!spec.output || spec.output->empty() || *spec.output == "-") {
    std::cout << r.report;
    return r.exit_code;
  }
  std::ofstream out(*spec.output, std::ios::binary | std::ios::trunc);
  if (!out) {
    std::cerr << "qens: cannot write report to " << *spec.output << "\n";
    return kExitInputError;
  }
  out << r.report;
  return out ? r.exit_code : kExitInputError;
}

}  // namespace qens
