// Copyright 2026 The incentive_forge Authors
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

#ifndef INCENTIVE_FORGE_EXPERIMENT_COMMANDS_HPP_
#define INCENTIVE_FORGE_EXPERIMENT_COMMANDS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "analysis/certificates.hpp"
#include "core/types.hpp"
#include "experiment/config.hpp"
#include "json.hpp"

namespace incentive_forge {

struct Artifact {
  std::string name;  // file name inside the output directory
  std::string content;
};

struct CommandResult {
  std::vector<Artifact> artifacts;
  bool converged = true;
  Vector final_x;
  Vector final_p;
  std::string summary;  // JSON document echoed by the command-line tool
};

// Writes trajectory.csv and summary.json.
CommandResult CmdSimulate(const ExperimentConfig& cfg);
// Writes fixed_point.json.
CommandResult CmdFixedPoint(const ExperimentConfig& cfg);
// Writes certificate.json.
CommandResult CmdCertify(const ExperimentConfig& cfg);
// Writes sweep.csv, one row per value, in input order. threads == 0 picks
// DefaultSweepThreads().
CommandResult CmdSweep(const ExperimentConfig& cfg, const SweepSpec& sweep,
                       unsigned threads = 0);

// Hardware concurrency capped by INCENTIVE_FORGE_THREADS when set.
unsigned DefaultSweepThreads();

// Fixed point of the configured rule, used as the reference for distances.
// Empty when the family solver reports a singular system.
std::optional<FixedPointResult> ReferenceFixedPoint(const ExperimentConfig& cfg);

CertificateReport CertifyConfig(const ExperimentConfig& cfg);
nlohmann::ordered_json CertificateToJson(const CertificateReport& report);

// Seventeen significant digits, enough to round-trip any double.
std::string FormatNumber(double v);

// Creates dir if needed and writes every artifact. Throws Error on I/O failure.
void WriteArtifacts(const CommandResult& result, const std::string& dir);

}  // namespace incentive_forge

#endif  // INCENTIVE_FORGE_EXPERIMENT_COMMANDS_HPP_
