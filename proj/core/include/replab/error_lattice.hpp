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

#include <cstdint>
#include <span>
#include <vector>

#include "replab/noise_model.hpp"
#include "replab/rng.hpp"

namespace replab {

/// Direction of the defect pair produced by a correlated (r-type) event.
///
/// kRising: the event on data qubit i at round t lights ancilla i-1 at round t
/// and ancilla i at round t+1, i.e. a (+1, +1) step in (space, time). The cell
/// of qubit i then owns ancilla i. kFalling mirrors space: the cell owns
/// ancilla i-1 and the step is (-1, +1).
enum class DiagonalOrientation { kRising, kFalling };

/// Space-time extent of a repetition-code memory experiment: d data qubits,
/// d-1 ancillas, T measurement rounds with a perfect final round.
struct LatticeDims {
    int d = 3;
    int T = 3;
    DiagonalOrientation orientation = DiagonalOrientation::kRising;

    void validate() const;
    int num_ancillas() const {
        return d - 1;
    }
    /// Ancilla measured together with qubit i in one cell, or -1 at the open end.
    int partner_ancilla(int qubit) const;
    bool operator==(const LatticeDims &) const = default;
};

/// Per-cell (qubit i, round t) signs of the three independent processes.
/// +1 means the process did not fire. Index: (t - 1) * d + i.
struct DisorderSample {
    LatticeDims dims;
    EffectiveRates rates;
    std::uint64_t seed = 0;
    std::vector<std::int8_t> z_p, z_q, z_r;

    size_t cell(int qubit, int round) const {
        return static_cast<size_t>(round - 1) * dims.d + qubit;
    }
};

struct CellSigns {
    std::int8_t v;  ///< data link
    std::int8_t h;  ///< measurement link
};

/// v = z_p z_r, h = z_q z_r.
constexpr CellSigns cell_signs(std::int8_t z_p, std::int8_t z_q, std::int8_t z_r) {
    return {static_cast<std::int8_t>(z_p * z_r), static_cast<std::int8_t>(z_q * z_r)};
}

struct CellDraw {
    std::int8_t z_p, z_q, z_r;
};

/// Three independent sign draws with flip probabilities (p, q, r); always
/// consumes exactly three uniforms.
CellDraw draw_cell(Rng &rng, const EffectiveRates &rates);

/// Error configuration: v per vertical link (data qubit i, round t), index
/// (t - 1) * d + i; h per horizontal link (ancilla x, round t), index
/// (t - 1) * (d - 1) + x. -1 marks a link in the chain.
struct ErrorChain {
    LatticeDims dims;
    std::vector<std::int8_t> v;
    std::vector<std::int8_t> h;

    static ErrorChain empty(const LatticeDims &dims);

    std::int8_t &v_at(int qubit, int round) {
        return v[static_cast<size_t>(round - 1) * dims.d + qubit];
    }
    std::int8_t v_at(int qubit, int round) const {
        return v[static_cast<size_t>(round - 1) * dims.d + qubit];
    }
    std::int8_t &h_at(int ancilla, int round) {
        return h[static_cast<size_t>(round - 1) * (dims.d - 1) + ancilla];
    }
    std::int8_t h_at(int ancilla, int round) const {
        return h[static_cast<size_t>(round - 1) * (dims.d - 1) + ancilla];
    }
};

struct Defect {
    int x;  ///< ancilla index
    int t;  ///< round
    bool operator==(const Defect &) const = default;
    auto operator<=>(const Defect &) const = default;
};

/// Time-differenced stabilizer outcomes. Index (t - 1) * (d - 1) + x.
struct SyndromeVolume {
    LatticeDims dims;
    std::vector<std::uint8_t> bits;

    bool at(int ancilla, int round) const {
        return bits[static_cast<size_t>(round - 1) * (dims.d - 1) + ancilla] != 0;
    }
    int count() const;
    bool empty() const {
        return count() == 0;
    }
    /// Defects ordered by (t, x).
    std::vector<Defect> defects() const;
};

/// One Ising spin per elementary equivalence (qubit i, round t), t in [1, T-1].
/// Index (t - 1) * d + i.
struct SpinConfig {
    LatticeDims dims;
    std::vector<std::int8_t> sigma;

    static SpinConfig all_up(const LatticeDims &dims);
    std::int8_t at(int qubit, int round) const {
        return sigma[static_cast<size_t>(round - 1) * dims.d + qubit];
    }
};

enum class EdgeType : std::uint8_t { kP, kQ, kR };

/// A single elementary event of the space-time lattice. index is the data
/// qubit for kP/kR and the ancilla for kQ. Indices outside the code (paths
/// that wander past the open ends) carry no physical effect.
struct LatticeEdge {
    EdgeType type;
    int index;
    int round;
    bool operator==(const LatticeEdge &) const = default;
};

/// Toggles the links of a single event into a chain.
void toggle_edge(ErrorChain &chain, const LatticeEdge &edge);

/// Recovery operation produced by a decoder, as lattice events.
struct Correction {
    std::vector<LatticeEdge> edges;

    ErrorChain as_chain(const LatticeDims &dims) const;
    /// Net data flip per qubit (1 = flipped an odd number of times).
    std::vector<std::uint8_t> data_flips(const LatticeDims &dims) const;
};

enum class LogicalClass { kTrivial, kLogical };

DisorderSample sample_disorder(const LatticeDims &dims, const EffectiveRates &rates, std::uint64_t seed);
/// Same draw order as the seeded overload, from a caller-owned stream.
DisorderSample sample_disorder(const LatticeDims &dims, const EffectiveRates &rates, Rng &rng);

ErrorChain chain_from_disorder(const DisorderSample &sample);

SyndromeVolume syndrome_volume(const ErrorChain &chain, const LatticeDims &dims);
inline SyndromeVolume syndrome_volume(const ErrorChain &chain) {
    return syndrome_volume(chain, chain.dims);
}

/// E' = E sigma: every down spin toggles the data links of its qubit at
/// rounds t and t+1 and the measurement links of the adjacent ancillas at t.
ErrorChain apply_equivalence(const ErrorChain &chain, const SpinConfig &spins);

/// Throws ContractViolation if chain + correction leaves any defect.
LogicalClass residual_logical_class(const ErrorChain &chain, const Correction &correction);

}  // namespace replab
