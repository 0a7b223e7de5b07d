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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qens/numkernel.hpp"

namespace qens {

enum class Command {
  kMajorizeCheck,
  kMajorizeDecompose,
  kEnsembleSynth,
  kEnsembleVerify,
  kSchmidt,
  kCorollary4,
  kProtocolRun,
  kSchurReport,
};

std::string_view to_string(Command c);
std::optional<Command> parse_command(std::string_view name);
const std::vector<std::string_view>& command_names();

struct JobSpec {
  Command command = Command::kMajorizeCheck;
  std::vector<std::string> inputs;
  std::optional<std::string> output;  // stdout when empty
  std::uint64_t seed = 0;
  Tolerances tol;
  bool exhaustive = false;
  std::optional<std::size_t> d;        // protocol-run
  std::optional<std::size_t> members;  // ensemble-synth without a probvec
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitRejected = 1;
inline constexpr int kExitInputError = 2;

struct JobResult {
  int exit_code = kExitOk;
  std::string report;  // pretty-printed JSON, newline-terminated
};

/// Runs the job and renders its report. Never throws for bad input; the
/// exit code and report's "status"/"reason" describe the failure.
JobResult run_job(const JobSpec& spec);

/// run_job, then writes the report to spec.output (or stdout). Returns the
/// exit code; a failure to write the report is an input error.
int run_job_and_write(const JobSpec& spec);

}  // namespace qens
