// Copyright 2026 The replab Authors
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

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "replab/config.hpp"

namespace replab {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitUserError = 1,
    kExitInternalError = 2,
};

/// Output file names inside the run directory.
inline constexpr const char *kDecodeSweepCsv = "decode_sweep.csv";
inline constexpr const char *kDecodeThresholdsJson = "decode_thresholds.json";
inline constexpr const char *kMcRunCsv = "mc_run.csv";
inline constexpr const char *kThresholdsJson = "thresholds.json";
inline constexpr const char *kPhaseDiagramCsv = "phase_diagram.csv";
inline constexpr const char *kReportJson = "report.json";

/// Result documents of the JSON-producing commands (also written to the run
/// directory when one is configured).
nlohmann::json rates_document(const RunConfig &config);
nlohmann::json sample_document(const RunConfig &config);

/// Sweep commands; each needs config.out_dir and writes a manifest.
void run_decode_sweep(const RunConfig &config);
void run_mc(const RunConfig &config);
void run_fss(const RunConfig &config);
void run_report(const RunConfig &config);

/// Dispatches on config.command. Errors are printed to err and mapped to an
/// exit status: DomainError (bad input) -> 1, anything else -> 2.
int run_command(const RunConfig &config, std::ostream &out, std::ostream &err);

}  // namespace replab
