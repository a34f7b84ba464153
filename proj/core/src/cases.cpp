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

#include "replab/cases.hpp"

#include "replab/errors.hpp"

namespace replab {

EffectiveRates CaseSpec::rates_at(double x) const {
    if (!(x >= 0.0)) {
        throw DomainError("p", "grid value must be nonnegative");
    }
    if (kind == Kind::kCircuit) {
        CircuitNoiseParams c{circuit_weights.p_sp * x, circuit_weights.p_id * x, circuit_weights.p_1 * x,
                             circuit_weights.p_m * x, circuit_weights.p_2 * x};
        return effective_rates_from_circuit(c);
    }
    EffectiveRates r{x, q_ratio * x, r_ratio * x};
    r.validate();
    return r;
}

const std::vector<std::string> &preset_case_names() {
    static const std::vector<std::string> names{"I", "II", "III", "IV"};
    return names;
}

CaseSpec ratio_case(std::string name, double q_ratio, double r_ratio) {
    if (!(q_ratio >= 0.0) || !(r_ratio >= 0.0)) {
        throw DomainError("ratios", "rate ratios must be nonnegative");
    }
    CaseSpec c;
    c.name = std::move(name);
    c.kind = CaseSpec::Kind::kRatios;
    c.q_ratio = q_ratio;
    c.r_ratio = r_ratio;
    return c;
}

CaseSpec circuit_case(std::string name, const CircuitNoiseParams &weights) {
    CaseSpec c;
    c.name = std::move(name);
    c.kind = CaseSpec::Kind::kCircuit;
    c.circuit_weights = weights;
    return c;
}

CaseSpec preset_case(std::string_view name) {
    if (name == "I") {
        return ratio_case("I", 1.0, 0.5);
    }
    if (name == "II") {
        return ratio_case("II", 1.0, 1.0);
    }
    if (name == "III") {
        return ratio_case("III", 1.0, 2.0);
    }
    if (name == "IV") {
        return ratio_case("IV", 1.0, 0.0);
    }
    throw DomainError("case", "unknown preset '" + std::string(name) + "' (expected I, II, III or IV)");
}

}  // namespace replab
