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

#include "replab/noise_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "replab/errors.hpp"
#include "replab/pauli_transfer_matrix.hpp"

namespace replab {
namespace {

void check_probability(const char *field, double value, double cap) {
    if (!std::isfinite(value) || value < 0.0 || value > cap) {
        throw DomainError(field, "must lie in [0, " + std::to_string(cap) + "], got " + std::to_string(value));
    }
}

/// Flip probability contributed by a single-qubit depolarizing channel: two of
/// the three Paulis act as a flip on the relevant basis.
double depolarizing_flip(double rate) {
    return 2.0 * rate / 3.0;
}

void normalize(NishimoriCouplings &out, Normalization policy);

}  // namespace

void CircuitNoiseParams::validate() const {
    check_probability("p_sp", p_sp, kSingleQubitCap);
    check_probability("p_id", p_id, kSingleQubitCap);
    check_probability("p_1", p_1, kSingleQubitCap);
    check_probability("p_m", p_m, kSingleQubitCap);
    check_probability("p_2", p_2, kTwoQubitCap);
}

void EffectiveRates::validate() const {
    check_probability("p", p, 0.5);
    check_probability("q", q, 0.5);
    check_probability("r", r, 0.5);
}

double compose_flip_channels(std::span<const double> rates) {
    double contraction = 1.0;
    for (double g : rates) {
        if (!std::isfinite(g) || g < 0.0 || g > 1.0) {
            throw DomainError("rates", "flip probabilities must lie in [0, 1]");
        }
        contraction *= 1.0 - 2.0 * g;
    }
    return 0.5 * (1.0 - contraction);
}

std::array<double, 3> factorize_two_qubit_channel(double p_2) {
    check_probability("p_2", p_2, CircuitNoiseParams::kTwoQubitCap);
    double lambda = 8.0 * p_2 / 15.0;
    return {lambda, lambda, lambda};
}

double verify_factorization(double p_2) {
    check_probability("p_2", p_2, CircuitNoiseParams::kTwoQubitCap);
    // Reduced CNOT channel over {II, IZ, XI, XZ} (data x ancilla):
    // (1 - 12 p2/15) id + 4 p2/15 (P + Q + R), P = I(x)Z, Q = X(x)I, R = X(x)Z.
    std::vector<double> probs(16, 0.0);
    probs[pauli_index("II")] = 1.0 - 12.0 * p_2 / 15.0;
    probs[pauli_index("IZ")] = 4.0 * p_2 / 15.0;
    probs[pauli_index("XI")] = 4.0 * p_2 / 15.0;
    probs[pauli_index("XZ")] = 4.0 * p_2 / 15.0;
    auto once = PauliTransferMatrix::from_pauli_channel(2, probs);
    auto twice = once * once;

    auto [lp, lq, lr] = factorize_two_qubit_channel(p_2);
    auto factored = PauliTransferMatrix::single_pauli_flip("IZ", lp) * PauliTransferMatrix::single_pauli_flip("XI", lq) *
                    PauliTransferMatrix::single_pauli_flip("XZ", lr);
    return twice.max_abs_diff(factored);
}

EffectiveRates effective_rates_from_circuit(const CircuitNoiseParams &params) {
    params.validate();
    double two_qubit = factorize_two_qubit_channel(params.p_2)[0];
    double idle = depolarizing_flip(params.p_id);
    std::array<double, 5> data{two_qubit, idle, idle, idle, idle};
    std::array<double, 5> meas{two_qubit, depolarizing_flip(params.p_1), depolarizing_flip(params.p_1),
                               depolarizing_flip(params.p_sp), depolarizing_flip(params.p_m)};
    EffectiveRates out;
    out.p = compose_flip_channels(data);
    out.q = compose_flip_channels(meas);
    out.r = two_qubit;
    return out;
}

FundamentalProbs fundamental_probs(const EffectiveRates &rates) {
    rates.validate();
    const double p = rates.p, q = rates.q, r = rates.r;
    FundamentalProbs out;
    out.pi[0] = (1 - p) * (1 - q) * (1 - r) + p * q * r;
    out.pi[1] = p * (1 - q) * (1 - r) + r * q * (1 - p);
    out.pi[2] = q * (1 - p) * (1 - r) + r * p * (1 - q);
    out.pi[3] = p * q * (1 - r) + r * (1 - p) * (1 - q);
    return out;
}

NishimoriCouplings nishimori_couplings(const FundamentalProbs &probs, const NishimoriOptions &options) {
    NishimoriCouplings out;
    std::array<double, 4> logs{};
    for (int i = 0; i < 4; ++i) {
        double pi = probs.pi[i];
        if (!std::isfinite(pi) || pi < 0.0 || pi > 1.0) {
            throw DomainError("pi[" + std::to_string(i) + "]", "must be a probability");
        }
        if (pi <= 0.0) {
            if (!options.pi_floor) {
                throw InfiniteCouplingError(i);
            }
            pi = *options.pi_floor;
            out.floored = true;
        }
        logs[i] = std::log(pi);
    }
    out.kappa[0] = 0.25 * (logs[0] + logs[1] + logs[2] + logs[3]);
    out.kappa[1] = 0.25 * (logs[0] + logs[1] - logs[2] - logs[3]);
    out.kappa[2] = 0.25 * (logs[0] + logs[2] - logs[1] - logs[3]);
    out.kappa[3] = 0.25 * (logs[0] + logs[3] - logs[1] - logs[2]);

    normalize(out, options.normalization);
    return out;
}

NishimoriCouplings nishimori_couplings(const EffectiveRates &rates, const NishimoriOptions &options) {
    NishimoriCouplings out = nishimori_couplings(fundamental_probs(rates), options);
    const std::array<double, 3> r{rates.p, rates.q, rates.r};
    bool changed = false;
    for (int i = 0; i < 3; ++i) {
        if (r[i] == 0.0 && out.kappa[i + 1] != 0.0) {
            out.kappa[i + 1] = 0.0;
            changed = true;
        }
    }
    if (changed) {
        normalize(out, options.normalization);
    }
    return out;
}

namespace {

void normalize(NishimoriCouplings &out, Normalization policy) {
    double largest = std::max({out.kappa[1], out.kappa[2], out.kappa[3]});
    out.policy_used = policy;
    switch (policy) {
        case Normalization::kJ1:
            if (out.kappa[1] != 0.0) {
                out.kappa_norm = out.kappa[1];
            } else {
                out.kappa_norm = largest;
                out.policy_used = Normalization::kMax;
            }
            break;
        case Normalization::kMax:
            out.kappa_norm = largest;
            break;
        case Normalization::kNone:
            out.kappa_norm = 1.0;
            break;
    }
    if (!(out.kappa_norm > 0.0) || !std::isfinite(out.kappa_norm)) {
        throw DomainError("kappa_norm", "normalization constant must be positive and finite (rates at or above 1/2?)");
    }
    for (int i = 0; i < 3; ++i) {
        out.J[i] = out.kappa[i + 1] / out.kappa_norm;
    }
}

}  // namespace

const char *to_string(Normalization n) {
    switch (n) {
        case Normalization::kJ1:
            return "J1";
        case Normalization::kMax:
            return "max";
        case Normalization::kNone:
            return "none";
    }
    return "?";
}

Normalization parse_normalization(std::string_view name) {
    if (name == "J1" || name == "j1") return Normalization::kJ1;
    if (name == "max") return Normalization::kMax;
    if (name == "none") return Normalization::kNone;
    throw DomainError("normalization", "expected one of J1, max, none");
}

}  // namespace replab
