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
#include <vector>

#include "replab/error_lattice.hpp"
#include "replab/min_weight_matching.hpp"
#include "replab/noise_model.hpp"

namespace replab {

/// Negative log-odds edge weights. +infinity marks an unusable edge type.
struct WeightMetric {
    double w_p = 0.0;
    double w_q = 0.0;
    double w_r = 0.0;
};

/// -log(x / (1 - x)); +infinity at x = 0. Throws DomainError for x >= 1/2.
double log_odds_weight(double x, const char *field = "rate");

WeightMetric weight_metric(const EffectiveRates &rates);

/// The two edge families a minimum path is built from.
enum class PathFamily : std::uint8_t { kPQ, kPR, kQR };

struct PairDistance {
    double weight;
    PathFamily family;
};

/// Minimum over the three two-family weighted Manhattan distances. Ties
/// resolve in the order pq, pr, qr.
PairDistance defect_distance_detail(const Defect &a, const Defect &b, const WeightMetric &metric,
                                    DiagonalOrientation orientation = DiagonalOrientation::kRising);

double defect_distance(const Defect &a, const Defect &b, const WeightMetric &metric,
                       DiagonalOrientation orientation = DiagonalOrientation::kRising);

/// Pair distance inside a lattice of the given extent. Identical to the
/// unbounded metric except for T = 1, where only space-like edges exist.
PairDistance defect_distance_detail(const Defect &a, const Defect &b, const WeightMetric &metric,
                                    const LatticeDims &dims);

enum class BoundarySide : std::uint8_t { kLeft, kRight };

struct BoundaryDistance {
    double weight;
    BoundarySide side;
    int diagonal_steps;  ///< r-steps taken toward the boundary
};

/// Cheapest path from a defect to either open end of the code. Each of the s
/// columns to cross costs w_p, w_r (a diagonal step, limited by how far the
/// path can drift in time before leaving [1, T]) or w_q + w_r (a diagonal step
/// undone in time). Ties prefer the left side.
BoundaryDistance boundary_distance_detail(const Defect &a, const WeightMetric &metric, const LatticeDims &dims);

double boundary_distance(const Defect &a, const WeightMetric &metric, const LatticeDims &dims);

/// Matching graph with one virtual boundary node per real defect. Node i < n
/// is defect i, node n + i its virtual partner. Weights are stored densely;
/// +infinity marks an absent edge.
struct MatchingGraph {
    int num_real = 0;
    std::vector<double> weights;

    int num_nodes() const {
        return 2 * num_real;
    }
    double weight(int a, int b) const {
        return weights[static_cast<size_t>(a) * num_nodes() + b];
    }
    std::vector<WeightedEdge> edge_list() const;
};

/// Real-real edges carry the pair distance, real-virtual edges the boundary
/// distance of the real node's own virtual copy, and virtual-virtual edges 0.
/// With prune set, real-real edges heavier than both endpoints' boundary
/// distances combined are dropped (never part of an optimal matching).
MatchingGraph build_matching_graph(const std::vector<Defect> &defects, const WeightMetric &metric,
                                   const LatticeDims &dims, bool prune = false);

Matching solve_mwpm(const MatchingGraph &graph);

enum class MatchingMode : std::uint8_t {
    kDoubled,  ///< explicit virtual node per defect
    kFolded,   ///< one boundary node; pair weights min(d_ij, b_i + b_j)
};

struct DecoderOptions {
    MatchingMode mode = MatchingMode::kFolded;
    bool prune = false;
};

/// Endpoint pair of the decoder output; partner == -1 means matched to the
/// boundary.
struct MatchedPair {
    int defect;
    int partner;
};

struct DecodeResult {
    Correction correction;
    std::vector<MatchedPair> pairs;
    double matched_weight = 0.0;
};

DecodeResult decode(const SyndromeVolume &syndrome, const WeightMetric &metric, const LatticeDims &dims,
                    const DecoderOptions &options = {});

/// Lattice events along the canonical minimum path between two defects.
std::vector<LatticeEdge> pair_path(const Defect &a, const Defect &b, const WeightMetric &metric,
                                   const LatticeDims &dims);

/// Lattice events along the canonical minimum path from a defect to a boundary.
std::vector<LatticeEdge> boundary_path(const Defect &a, const WeightMetric &metric, const LatticeDims &dims);

/// Sum of metric weights over the events of a correction.
double correction_weight(const Correction &correction, const WeightMetric &metric);

struct TrialOutcome {
    bool success = true;
    int defects = 0;
    double matched_weight = 0.0;
};

/// Sample one memory experiment, decode it and classify the residual.
TrialOutcome run_trial(const LatticeDims &dims, const EffectiveRates &rates, const WeightMetric &metric, Rng &rng,
                       const DecoderOptions &options = {});

struct LogicalErrorEstimate {
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    double rate = 0.0;
    double std_error = 0.0;
};

/// Monte Carlo failure fraction over trials [first_trial, first_trial + count).
/// Trial k draws from its own stream derive_seed(seed, k), so any split of the
/// range reproduces the same per-trial outcomes.
LogicalErrorEstimate logical_error_trials(const LatticeDims &dims, const EffectiveRates &rates, std::uint64_t seed,
                                          std::uint64_t first_trial, std::uint64_t count,
                                          const DecoderOptions &options = {});

/// Failure fraction with binomial standard error sqrt(f (1 - f) / trials).
LogicalErrorEstimate logical_error_rate(const LatticeDims &dims, const EffectiveRates &rates, std::uint64_t trials,
                                        std::uint64_t seed, const DecoderOptions &options = {});

/// Combine partial counts; rate and error are recomputed.
LogicalErrorEstimate merge_estimates(const LogicalErrorEstimate &a, const LogicalErrorEstimate &b);

}  // namespace replab
