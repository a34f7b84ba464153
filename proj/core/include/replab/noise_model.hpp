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
#include <optional>
#include <span>
#include <string_view>

namespace replab {

/// Depolarizing strengths of the circuit components of one syndrome-extraction
/// cycle. Single-qubit channels apply each of X, Y, Z with probability rate/3;
/// the CNOT channel applies each non-identity two-qubit Pauli with p_2/15.
struct CircuitNoiseParams {
    double p_sp = 0;  ///< state preparation
    double p_id = 0;  ///< idling
    double p_1 = 0;   ///< single-qubit gate
    double p_m = 0;   ///< measurement
    double p_2 = 0;   ///< CNOT

    static constexpr double kSingleQubitCap = 0.75;
    static constexpr double kTwoQubitCap = 15.0 / 16.0;

    /// Throws DomainError naming the offending field.
    void validate() const;
};

/// Effective independent flip channels: data flip p, measurement flip q,
/// correlated data+measurement flip r.
struct EffectiveRates {
    double p = 0;
    double q = 0;
    double r = 0;

    void validate() const;
    bool operator==(const EffectiveRates &) const = default;
};

/// Probabilities of the four per-cell events e0 (nothing), e1 (data link),
/// e2 (measurement link), e3 (both links).
struct FundamentalProbs {
    std::array<double, 4> pi{1, 0, 0, 0};

    double sum() const {
        return pi[0] + pi[1] + pi[2] + pi[3];
    }
};

enum class Normalization {
    kJ1,   ///< divide by kappa_1, falling back to max(kappa_1..3) when kappa_1 == 0
    kMax,  ///< divide by max(kappa_1..3)
    kNone  ///< kappa_norm = 1
};

struct NishimoriOptions {
    Normalization normalization = Normalization::kJ1;
    /// Opt-in clamp for vanishing probabilities; unset means zero is an error.
    std::optional<double> pi_floor;
};

struct NishimoriCouplings {
    std::array<double, 4> kappa{};  ///< beta * J_i, i = 0..3
    std::array<double, 3> J{};      ///< kappa_{1..3} / kappa_norm
    double kappa_norm = 1;
    Normalization policy_used = Normalization::kJ1;
    bool floored = false;

    /// Temperature at which the normalized couplings reproduce the error model.
    double nishimori_temperature() const {
        return 1.0 / kappa_norm;
    }
};

/// 1 - 2 gamma_tot = prod (1 - 2 gamma_i).
double compose_flip_channels(std::span<const double> rates);

/// Rates of the three equal independent flip channels whose product equals
/// two consecutive CNOT depolarizing channels (restricted to relevant errors).
std::array<double, 3> factorize_two_qubit_channel(double p_2);

/// Max elementwise |R_twice - R_factored| over the 16x16 PTMs.
double verify_factorization(double p_2);

EffectiveRates effective_rates_from_circuit(const CircuitNoiseParams &params);

FundamentalProbs fundamental_probs(const EffectiveRates &rates);

NishimoriCouplings nishimori_couplings(const FundamentalProbs &probs, const NishimoriOptions &options = {});

/// Same as above from the rates. A zero rate makes its coupling exactly zero
/// (e.g. r = 0 gives pi0 * pi3 == pi1 * pi2 identically, hence kappa_3 = 0).
NishimoriCouplings nishimori_couplings(const EffectiveRates &rates, const NishimoriOptions &options = {});

const char *to_string(Normalization n);
Normalization parse_normalization(std::string_view name);

}  // namespace replab
