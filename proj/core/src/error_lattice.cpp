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

#include "replab/error_lattice.hpp"

#include <algorithm>

#include "replab/errors.hpp"

namespace replab {

void LatticeDims::validate() const {
    if (d < 2) {
        throw DomainError("d", "code distance must be at least 2");
    }
    if (T < 1) {
        throw DomainError("T", "need at least one measurement round");
    }
}

int LatticeDims::partner_ancilla(int qubit) const {
    int x = orientation == DiagonalOrientation::kRising ? qubit : qubit - 1;
    return (x >= 0 && x <= d - 2) ? x : -1;
}

CellDraw draw_cell(Rng &rng, const EffectiveRates &rates) {
    CellDraw c;
    c.z_p = bernoulli(rng, rates.p) ? -1 : 1;
    c.z_q = bernoulli(rng, rates.q) ? -1 : 1;
    c.z_r = bernoulli(rng, rates.r) ? -1 : 1;
    return c;
}

DisorderSample sample_disorder(const LatticeDims &dims, const EffectiveRates &rates, std::uint64_t seed) {
    Rng rng(seed);
    DisorderSample out = sample_disorder(dims, rates, rng);
    out.seed = seed;
    return out;
}

DisorderSample sample_disorder(const LatticeDims &dims, const EffectiveRates &rates, Rng &rng) {
    dims.validate();
    rates.validate();
    DisorderSample out;
    out.dims = dims;
    out.rates = rates;
    size_t cells = static_cast<size_t>(dims.d) * dims.T;
    out.z_p.assign(cells, 1);
    out.z_q.assign(cells, 1);
    out.z_r.assign(cells, 1);
    for (int t = 1; t <= dims.T; ++t) {
        for (int i = 0; i < dims.d; ++i) {
            CellDraw c = draw_cell(rng, rates);
            size_t k = out.cell(i, t);
            out.z_p[k] = c.z_p;
            // Perfect final round: no measurement or correlated flips at t = T.
            if (t < dims.T) {
                out.z_r[k] = c.z_r;
                if (dims.partner_ancilla(i) >= 0) {
                    out.z_q[k] = c.z_q;
                }
            }
        }
    }
    return out;
}

ErrorChain ErrorChain::empty(const LatticeDims &dims) {
    dims.validate();
    ErrorChain c;
    c.dims = dims;
    c.v.assign(static_cast<size_t>(dims.d) * dims.T, 1);
    c.h.assign(static_cast<size_t>(dims.d - 1) * dims.T, 1);
    return c;
}

ErrorChain chain_from_disorder(const DisorderSample &sample) {
    const LatticeDims &dims = sample.dims;
    ErrorChain chain = ErrorChain::empty(dims);
    for (int t = 1; t <= dims.T; ++t) {
        for (int i = 0; i < dims.d; ++i) {
            size_t k = sample.cell(i, t);
            CellSigns s = cell_signs(sample.z_p[k], sample.z_q[k], sample.z_r[k]);
            chain.v_at(i, t) = s.v;
            int x = dims.partner_ancilla(i);
            if (x >= 0) {
                chain.h_at(x, t) = static_cast<std::int8_t>(chain.h_at(x, t) * s.h);
            }
        }
    }
    return chain;
}

int SyndromeVolume::count() const {
    return static_cast<int>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

std::vector<Defect> SyndromeVolume::defects() const {
    std::vector<Defect> out;
    int w = dims.d - 1;
    for (int t = 1; t <= dims.T; ++t) {
        for (int x = 0; x < w; ++x) {
            if (at(x, t)) {
                out.push_back({x, t});
            }
        }
    }
    return out;
}

SyndromeVolume syndrome_volume(const ErrorChain &chain, const LatticeDims &dims) {
    if (!(chain.dims == dims) || chain.v.size() != static_cast<size_t>(dims.d) * dims.T ||
        chain.h.size() != static_cast<size_t>(dims.d - 1) * dims.T) {
        throw DomainError("chain", "dimensions do not match the lattice");
    }
    SyndromeVolume s;
    s.dims = dims;
    int w = dims.d - 1;
    s.bits.assign(static_cast<size_t>(w) * dims.T, 0);
    auto flip = [&](int x, int t) {
        if (x >= 0 && x < w && t >= 1 && t <= dims.T) {
            s.bits[static_cast<size_t>(t - 1) * w + x] ^= 1;
        }
    };
    for (int t = 1; t <= dims.T; ++t) {
        for (int i = 0; i < dims.d; ++i) {
            if (chain.v_at(i, t) < 0) {
                flip(i - 1, t);
                flip(i, t);
            }
        }
        for (int x = 0; x < w; ++x) {
            if (chain.h_at(x, t) < 0) {
                flip(x, t);
                flip(x, t + 1);
            }
        }
    }
    return s;
}

SpinConfig SpinConfig::all_up(const LatticeDims &dims) {
    dims.validate();
    SpinConfig s;
    s.dims = dims;
    s.sigma.assign(static_cast<size_t>(dims.d) * std::max(dims.T - 1, 0), 1);
    return s;
}

ErrorChain apply_equivalence(const ErrorChain &chain, const SpinConfig &spins) {
    if (!(chain.dims == spins.dims) ||
        spins.sigma.size() != static_cast<size_t>(chain.dims.d) * std::max(chain.dims.T - 1, 0)) {
        throw DomainError("spins", "dimensions do not match the chain");
    }
    ErrorChain out = chain;
    const LatticeDims &dims = chain.dims;
    for (int t = 1; t < dims.T; ++t) {
        for (int i = 0; i < dims.d; ++i) {
            if (spins.at(i, t) > 0) {
                continue;
            }
            out.v_at(i, t) = static_cast<std::int8_t>(-out.v_at(i, t));
            out.v_at(i, t + 1) = static_cast<std::int8_t>(-out.v_at(i, t + 1));
            if (i - 1 >= 0) {
                out.h_at(i - 1, t) = static_cast<std::int8_t>(-out.h_at(i - 1, t));
            }
            if (i <= dims.d - 2) {
                out.h_at(i, t) = static_cast<std::int8_t>(-out.h_at(i, t));
            }
        }
    }
    return out;
}

void toggle_edge(ErrorChain &chain, const LatticeEdge &edge) {
    const LatticeDims &dims = chain.dims;
    if (edge.round < 1 || edge.round > dims.T) {
        return;
    }
    auto flip_v = [&](int i) {
        if (i >= 0 && i < dims.d) {
            chain.v_at(i, edge.round) = static_cast<std::int8_t>(-chain.v_at(i, edge.round));
        }
    };
    auto flip_h = [&](int x) {
        if (x >= 0 && x < dims.d - 1) {
            chain.h_at(x, edge.round) = static_cast<std::int8_t>(-chain.h_at(x, edge.round));
        }
    };
    switch (edge.type) {
        case EdgeType::kP:
            flip_v(edge.index);
            break;
        case EdgeType::kQ:
            flip_h(edge.index);
            break;
        case EdgeType::kR:
            flip_v(edge.index);
            // The partner ancilla is defined through the orientation even for
            // qubits beyond the open ends, where it is dropped by flip_h.
            flip_h(dims.orientation == DiagonalOrientation::kRising ? edge.index : edge.index - 1);
            break;
    }
}

ErrorChain Correction::as_chain(const LatticeDims &dims) const {
    ErrorChain c = ErrorChain::empty(dims);
    for (const auto &e : edges) {
        toggle_edge(c, e);
    }
    return c;
}

std::vector<std::uint8_t> Correction::data_flips(const LatticeDims &dims) const {
    std::vector<std::uint8_t> flips(dims.d, 0);
    for (const auto &e : edges) {
        if (e.type != EdgeType::kQ && e.index >= 0 && e.index < dims.d && e.round >= 1 && e.round <= dims.T) {
            flips[e.index] ^= 1;
        }
    }
    return flips;
}

LogicalClass residual_logical_class(const ErrorChain &chain, const Correction &correction) {
    const LatticeDims &dims = chain.dims;
    ErrorChain residual = correction.as_chain(dims);
    for (size_t k = 0; k < residual.v.size(); ++k) {
        residual.v[k] = static_cast<std::int8_t>(residual.v[k] * chain.v[k]);
    }
    for (size_t k = 0; k < residual.h.size(); ++k) {
        residual.h[k] = static_cast<std::int8_t>(residual.h[k] * chain.h[k]);
    }
    if (!syndrome_volume(residual, dims).empty()) {
        throw ContractViolation("residual_logical_class: chain plus correction leaves a nonempty syndrome");
    }
    std::vector<std::uint8_t> parity(dims.d, 0);
    for (int t = 1; t <= dims.T; ++t) {
        for (int i = 0; i < dims.d; ++i) {
            if (residual.v_at(i, t) < 0) {
                parity[i] ^= 1;
            }
        }
    }
    bool all_flipped = std::all_of(parity.begin(), parity.end(), [](std::uint8_t b) { return b == 1; });
    bool none_flipped = std::all_of(parity.begin(), parity.end(), [](std::uint8_t b) { return b == 0; });
    if (!all_flipped && !none_flipped) {
        throw ContractViolation("residual_logical_class: residual data pattern is neither trivial nor logical");
    }
    return all_flipped ? LogicalClass::kLogical : LogicalClass::kTrivial;
}

}  // namespace replab
