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

// qens: batch front end. One job per invocation; see README.md.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qens/jobs.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Pure-state ensembles, majorization and entanglement transformation"};
  app.set_version_flag("--version", std::string(QENS_VERSION));

  std::string command;
  qens::JobSpec spec;
  std::size_t d = 0;
  std::size_t members = 0;

  std::string names;
  for (std::string_view n : qens::command_names()) names += (names.empty() ? "" : ", ") + std::string(n);
  app.add_option("command", command, "One of: " + names)->required();
  app.add_option("-i,--input", spec.inputs, "Input JSON file (repeatable; order matters for x, y)")
      ->take_all();
  app.add_option("-o,--output", spec.output, "Report path (default: stdout)");
  app.add_option("--seed", spec.seed, "Seed for protocol-run outcome sampling");
  app.add_flag("--exhaustive", spec.exhaustive, "protocol-run: also simulate every outcome branch");
  app.add_option("--dim", d, "protocol-run: Schmidt rank d of the maximally entangled resource");
  app.add_option("--members", members, "ensemble-synth: uniform ensemble with this many members");
  app.add_option("--tol-herm", spec.tol.herm, "Hermiticity tolerance")->capture_default_str();
  app.add_option("--tol-trace", spec.tol.trace, "Trace tolerance")->capture_default_str();
  app.add_option("--tol-psd", spec.tol.psd, "Negative-eigenvalue tolerance")->capture_default_str();
  app.add_option("--tol-orth", spec.tol.orth, "Orthonormality tolerance")->capture_default_str();
  app.add_option("--tol-rec", spec.tol.rec, "Reconstruction tolerance (Frobenius)")
      ->capture_default_str();
  app.add_option("--tol-norm", spec.tol.norm, "State norm tolerance")->capture_default_str();
  app.add_option("--tol-major", spec.tol.prob, "Probability / majorization tolerance")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : qens::kExitInputError;
  }

  const auto cmd = qens::parse_command(command);
  if (!cmd) {
    std::cerr << "qens: unknown command '" << command << "' (expected one of: " << names << ")\n";
    return qens::kExitInputError;
  }
  spec.command = *cmd;
  if (d > 0) spec.d = d;
  if (members > 0) spec.members = members;
  return qens::run_job_and_write(spec);
}
