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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "replab/cases.hpp"
#include "replab/decoder.hpp"
#include "replab/error_lattice.hpp"
#include "replab/noise_model.hpp"
#include "replab/spin_glass.hpp"

namespace replab {

/// Temperature ladder request. Absolute bounds win over factors of the
/// clean-lattice reference temperature.
struct LadderSpec {
    std::optional<std::vector<double>> temperatures;
    std::optional<double> lo;
    std::optional<double> hi;
    double lo_factor = 0.5;
    double hi_factor = 1.5;
    int n = 24;

    std::vector<double> resolve(double t_guess) const;
};

/// Parsed, validated run configuration. raw keeps the effective JSON (after
/// command-line overrides) for hashing and the manifest.
struct RunConfig {
    std::string command;
    nlohmann::json raw = nlohmann::json::object();

    std::uint64_t seed = 1;
    int workers = 0;
    std::string out_dir;

    std::vector<CaseSpec> cases;
    std::vector<double> p_grid;
    NishimoriOptions nishimori;

    std::optional<CircuitNoiseParams> circuit;
    std::optional<EffectiveRates> rates;

    std::vector<int> d_list;
    std::optional<int> rounds;  ///< unset: T = d
    DiagonalOrientation orientation = DiagonalOrientation::kRising;
    std::uint64_t trials = 10000;
    std::uint64_t chunk = 2000;
    DecoderOptions decoder;

    std::vector<int> L_list;
    int samples = 1;
    McSchedule schedule;  ///< temperatures filled per grid point from ladder
    LadderSpec ladder;
    std::optional<std::array<double, 3>> couplings;

    std::vector<std::string> inputs;
};

/// Known subcommands.
const std::vector<std::string> &subcommands();

/// Parses JSON text; syntax errors are reported as DomainError with the line
/// and column.
nlohmann::json parse_config_text(const std::string &text, const std::string &source);

/// Sets a dotted key ("schedule.n_met") in a JSON object, creating parents.
void set_config_value(nlohmann::json &config, const std::string &dotted_key, const nlohmann::json &value);

/// Validates and converts. Unknown keys and wrong types raise DomainError
/// naming the offending field.
RunConfig parse_run_config(const nlohmann::json &config, const std::string &command);

/// FNV-1a of the canonical (sorted-key) serialization, as 16 hex digits.
std::string config_hash(const nlohmann::json &config);

/// Decimal grid start, start + step, ... up to stop inclusive, each value
/// rounded to 12 decimals.
std::vector<double> range_grid(double start, double stop, double step);

std::string to_string(DiagonalOrientation o);
std::string to_string(MatchingMode m);

}  // namespace replab
