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
#include <utility>
#include <vector>

namespace replab {

struct IntEdge {
    int u;
    int v;
    std::int64_t weight;
};

/// Maximum-weight matching on a general graph (Edmonds blossom algorithm with
/// primal-dual updates, O(n^3)). With max_cardinality set, the result is a
/// maximum-weight matching among those of maximum cardinality. Returns mate[v]
/// or -1. Deterministic for a given edge order.
std::vector<int> max_weight_matching(int num_nodes, std::span<const IntEdge> edges, bool max_cardinality);

struct WeightedEdge {
    int u;
    int v;
    double weight;
};

struct Matching {
    std::vector<int> mate;
    double total_weight = 0.0;

    /// Matched pairs (a, b) with a < b, sorted.
    std::vector<std::pair<int, int>> pairs() const;
};

/// Minimum-weight perfect matching with nonnegative finite double weights.
/// Absent edges are treated as infinitely expensive. Weights are quantized to
/// 2^-k multiples of the largest weight with k chosen so every dual sum stays
/// exact in 64-bit integers; integer inputs below 2^40 are represented exactly.
/// total_weight is summed from the input doubles in pairs() order.
/// Throws ContractViolation if no perfect matching exists.
Matching min_weight_perfect_matching(int num_nodes, std::span<const WeightedEdge> edges);

}  // namespace replab
