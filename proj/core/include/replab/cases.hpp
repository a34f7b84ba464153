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

#include <string>
#include <string_view>
#include <vector>

#include "replab/noise_model.hpp"

namespace replab {

/// A one-parameter family of noise settings swept by a grid value x.
///
/// Ratio cases map x to (p, q, r) = (x, q_ratio x, r_ratio x). Circuit cases
/// scale the circuit weights by x and map them through the effective-rate
/// formulas.
struct CaseSpec {
    enum class Kind { kRatios, kCircuit };

    std::string name;
    Kind kind = Kind::kRatios;
    double q_ratio = 1.0;
    double r_ratio = 1.0;
    CircuitNoiseParams circuit_weights;

    EffectiveRates rates_at(double x) const;
};

/// Presets: I (p, p, p/2), II (p, p, p), III (p, p, 2p), IV (p, p, 0).
CaseSpec preset_case(std::string_view name);
const std::vector<std::string> &preset_case_names();

CaseSpec ratio_case(std::string name, double q_ratio, double r_ratio);
CaseSpec circuit_case(std::string name, const CircuitNoiseParams &weights);

}  // namespace replab
