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

// Exact failure probability of the decoder on a small experiment, by summing
// over every configuration of the elementary events. The decoder is the only
// library call; syndromes and the final logical class are computed here.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "replab/decoder.hpp"

namespace oracle {

/// Minimum over all ways to pair defects or send them to the boundary, given
/// pair costs D (dense n x n) and boundary costs B.
inline double min_pairing_with_boundary(int n, const std::vector<double> &D, const std::vector<double> &B) {
    std::vector<double> memo(1u << n, -1.0);
    std::function<double(std::uint32_t)> solve = [&](std::uint32_t left) -> double {
        if (left == 0) return 0.0;
        if (memo[left] >= 0) return memo[left];
        int i = __builtin_ctz(left);
        std::uint32_t rest = left & ~(1u << i);
        double best = B[i] + solve(rest);
        for (int j = i + 1; j < n; ++j) {
            if (rest & (1u << j)) best = std::min(best, D[i * n + j] + solve(rest & ~(1u << j)));
        }
        return memo[left] = best;
    };
    return solve((1u << n) - 1);
}

inline double exact_failure_probability(const replab::LatticeDims &dims, const replab::EffectiveRates &rates,
                                        const replab::DecoderOptions &options = {}) {
    using namespace replab;
    const bool rising = dims.orientation == DiagonalOrientation::kRising;
    const std::vector<Event> events = experiment_events(dims.d, dims.T);
    const int n = static_cast<int>(events.size());
    const WeightMetric metric = weight_metric(rates);
    double fail = 0.0;
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        double prob = 1.0;
        History h(dims.d, dims.T);
        for (int k = 0; k < n; ++k) {
            const Event &e = events[k];
            double x = e.type == 'p' ? rates.p : e.type == 'q' ? rates.q : rates.r;
            if (mask >> k & 1) {
                prob *= x;
                h.apply(e, rising);
            } else {
                prob *= 1 - x;
            }
        }
        if (prob == 0.0) continue;
        SyndromeVolume syn{dims, h.syndrome()};
        DecodeResult res = decode(syn, metric, dims, options);
        std::vector<std::uint8_t> final = h.final_data();
        for (const LatticeEdge &e : res.correction.edges) {
            if (e.type != EdgeType::kQ && e.index >= 0 && e.index < dims.d) final[e.index] ^= 1;
        }
        // A zero final syndrome leaves either no flips or all of them.
        bool logical = final[0] != 0;
        for (int i = 1; i < dims.d; ++i) {
            if (final[i] != final[0]) throw std::logic_error("decoder left a nonzero syndrome");
        }
        if (logical) fail += prob;
    }
    return fail;
}

}  // namespace oracle
