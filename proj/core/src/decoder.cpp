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

#include "replab/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "replab/errors.hpp"

namespace replab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// n copies of weight w, with 0 * inf taken as 0.
double times(double w, int n) {
    return n == 0 ? 0.0 : w * n;
}

int rx(DiagonalOrientation o) {
    return o == DiagonalOrientation::kRising ? 1 : -1;
}

// Event traversed by a unit move from (x, t). dir is +1 forward / -1 backward.
LatticeEdge step_edge(EdgeType type, int dir, int x, int t, DiagonalOrientation o) {
    switch (type) {
        case EdgeType::kP:
            return {EdgeType::kP, dir > 0 ? x + 1 : x, t};
        case EdgeType::kQ:
            return {EdgeType::kQ, x, dir > 0 ? t : t - 1};
        case EdgeType::kR:
        default: {
            int s = rx(o);
            // Forward r-move: (x, t) -> (x + s, t + 1), event on qubit max(x, x + s) at round t.
            if (dir > 0) {
                return {EdgeType::kR, s > 0 ? x + 1 : x, t};
            }
            return {EdgeType::kR, s > 0 ? x : x + 1, t - 1};
        }
    }
}

struct StepPlan {
    EdgeType type;
    int dir;
    int count;
};

// Walk from a through the planned unit moves, taking at each point the first
// move (in plan order) that stays inside [x_lo, x_hi] x [t_lo, t_hi].
void walk(Defect pos, std::vector<StepPlan> plan, int x_lo, int x_hi, int t_lo, int t_hi, DiagonalOrientation o,
          std::vector<LatticeEdge> &out) {
    const int s = rx(o);
    auto moved = [&](const StepPlan &st) {
        Defect n = pos;
        switch (st.type) {
            case EdgeType::kP:
                n.x += st.dir;
                break;
            case EdgeType::kQ:
                n.t += st.dir;
                break;
            case EdgeType::kR:
                n.x += st.dir * s;
                n.t += st.dir;
                break;
        }
        return n;
    };
    while (true) {
        bool any_left = false;
        bool stepped = false;
        for (auto &st : plan) {
            if (st.count == 0) {
                continue;
            }
            any_left = true;
            Defect n = moved(st);
            if (n.x < x_lo || n.x > x_hi || n.t < t_lo || n.t > t_hi) {
                continue;
            }
            out.push_back(step_edge(st.type, st.dir, pos.x, pos.t, o));
            pos = n;
            --st.count;
            stepped = true;
            break;
        }
        if (!any_left) {
            return;
        }
        if (!stepped) {
            throw ContractViolation("decoder: no admissible path step");
        }
    }
}

int sgn(int v) {
    return (v > 0) - (v < 0);
}

}  // namespace

double log_odds_weight(double x, const char *field) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw DomainError(field, "rate must be a finite probability");
    }
    if (x >= 0.5) {
        throw DomainError(field, "rate must be below 1/2 for positive matching weights");
    }
    if (x == 0.0) {
        return kInf;
    }
    return -std::log(x / (1.0 - x));
}

WeightMetric weight_metric(const EffectiveRates &rates) {
    return {log_odds_weight(rates.p, "p"), log_odds_weight(rates.q, "q"), log_odds_weight(rates.r, "r")};
}

PairDistance defect_distance_detail(const Defect &a, const Defect &b, const WeightMetric &m,
                                    DiagonalOrientation orientation) {
    // Canonical order: forward in time; the r-step is (+1, +1) after mirroring.
    int dx = b.x - a.x;
    int dt = b.t - a.t;
    if (dt < 0 || (dt == 0 && dx < 0)) {
        dx = -dx;
        dt = -dt;
    }
    dx *= rx(orientation);
    double pq = times(m.w_p, std::abs(dx)) + times(m.w_q, std::abs(dt));
    double pr = times(m.w_p, std::abs(dx - dt)) + times(m.w_r, std::abs(dt));
    double qr = times(m.w_q, std::abs(dt - dx)) + times(m.w_r, std::abs(dx));
    PairDistance best{pq, PathFamily::kPQ};
    if (pr < best.weight) {
        best = {pr, PathFamily::kPR};
    }
    if (qr < best.weight) {
        best = {qr, PathFamily::kQR};
    }
    return best;
}

PairDistance defect_distance_detail(const Defect &a, const Defect &b, const WeightMetric &metric,
                                    const LatticeDims &dims) {
    if (dims.T == 1) {
        return {times(metric.w_p, std::abs(b.x - a.x)), PathFamily::kPQ};
    }
    return defect_distance_detail(a, b, metric, dims.orientation);
}

double defect_distance(const Defect &a, const Defect &b, const WeightMetric &metric,
                       DiagonalOrientation orientation) {
    return defect_distance_detail(a, b, metric, orientation).weight;
}

BoundaryDistance boundary_distance_detail(const Defect &a, const WeightMetric &m, const LatticeDims &dims) {
    const bool rising = dims.orientation == DiagonalOrientation::kRising;
    const double combo = dims.T >= 2 ? m.w_q + m.w_r : kInf;
    const double column = std::min(m.w_p, combo);
    auto side_cost = [&](int steps, int room, int &diag) {
        diag = m.w_r < m.w_p ? std::min(steps, room) : 0;
        return times(m.w_r, diag) + times(column, steps - diag);
    };
    // Time drift available to diagonal steps heading toward each side.
    int room_left = rising ? a.t - 1 : dims.T - a.t;
    int room_right = rising ? dims.T - a.t : a.t - 1;
    int diag_left = 0;
    int diag_right = 0;
    double left = side_cost(a.x + 1, room_left, diag_left);
    double right = side_cost(dims.d - 1 - a.x, room_right, diag_right);
    if (right < left) {
        return {right, BoundarySide::kRight, diag_right};
    }
    return {left, BoundarySide::kLeft, diag_left};
}

double boundary_distance(const Defect &a, const WeightMetric &metric, const LatticeDims &dims) {
    return boundary_distance_detail(a, metric, dims).weight;
}

std::vector<WeightedEdge> MatchingGraph::edge_list() const {
    std::vector<WeightedEdge> out;
    int n = num_nodes();
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            double w = weight(a, b);
            if (std::isfinite(w)) {
                out.push_back({a, b, w});
            }
        }
    }
    return out;
}

MatchingGraph build_matching_graph(const std::vector<Defect> &defects, const WeightMetric &metric,
                                   const LatticeDims &dims, bool prune) {
    MatchingGraph g;
    const int n = static_cast<int>(defects.size());
    g.num_real = n;
    const int N = 2 * n;
    g.weights.assign(static_cast<size_t>(N) * N, kInf);
    std::vector<double> bd(n);
    for (int i = 0; i < n; ++i) {
        bd[i] = boundary_distance(defects[i], metric, dims);
    }
    auto set = [&](int a, int b, double w) {
        g.weights[static_cast<size_t>(a) * N + b] = w;
        g.weights[static_cast<size_t>(b) * N + a] = w;
    };
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double w = defect_distance_detail(defects[i], defects[j], metric, dims).weight;
            if (!(prune && w > bd[i] + bd[j])) {
                set(i, j, w);
            }
            set(n + i, n + j, 0.0);
        }
        set(i, n + i, bd[i]);
    }
    return g;
}

Matching solve_mwpm(const MatchingGraph &graph) {
    std::vector<WeightedEdge> edges = graph.edge_list();
    return min_weight_perfect_matching(graph.num_nodes(), edges);
}

std::vector<LatticeEdge> pair_path(const Defect &a0, const Defect &b0, const WeightMetric &metric,
                                   const LatticeDims &dims) {
    Defect a = a0;
    Defect b = b0;
    if (b.t < a.t || (b.t == a.t && b.x < a.x)) {
        std::swap(a, b);
    }
    const PathFamily family = defect_distance_detail(a, b, metric, dims).family;
    const int s = rx(dims.orientation);
    const int dx = b.x - a.x;
    const int dt = b.t - a.t;
    std::vector<StepPlan> plan;
    switch (family) {
        case PathFamily::kPQ:
            plan = {{EdgeType::kP, sgn(dx), std::abs(dx)}, {EdgeType::kQ, 1, dt}};
            break;
        case PathFamily::kPR:
            // dt forward r-moves shift x by s * dt; p-moves cover the rest.
            plan = {{EdgeType::kP, sgn(dx - s * dt), std::abs(dx - s * dt)}, {EdgeType::kR, 1, dt}};
            break;
        case PathFamily::kQR: {
            int nr = s * dx;  // signed count of r-moves along x
            plan = {{EdgeType::kQ, sgn(dt - nr), std::abs(dt - nr)}, {EdgeType::kR, sgn(nr), std::abs(nr)}};
            break;
        }
    }
    std::vector<LatticeEdge> out;
    int x_lo = std::max(std::min(a.x, b.x) - 1, -1);
    int x_hi = std::min(std::max(a.x, b.x) + 1, dims.d - 1);
    int t_lo = std::max(a.t - 1, 1);
    int t_hi = std::min(b.t + 1, dims.T);
    walk(a, plan, x_lo, x_hi, t_lo, t_hi, dims.orientation, out);
    return out;
}

std::vector<LatticeEdge> boundary_path(const Defect &a, const WeightMetric &m, const LatticeDims &dims) {
    BoundaryDistance bd = boundary_distance_detail(a, m, dims);
    const int s = rx(dims.orientation);
    const int xdir = bd.side == BoundarySide::kLeft ? -1 : 1;
    const int steps = bd.side == BoundarySide::kLeft ? a.x + 1 : dims.d - 1 - a.x;
    // r-moves heading toward this side run forward in time iff s == xdir.
    const int rdir = s * xdir;
    std::vector<LatticeEdge> out;
    Defect pos = a;
    auto r_move = [&](int dir) {
        out.push_back(step_edge(EdgeType::kR, dir, pos.x, pos.t, dims.orientation));
        pos.x += dir * s;
        pos.t += dir;
    };
    for (int k = 0; k < bd.diagonal_steps; ++k) {
        r_move(rdir);
    }
    const bool use_combo = dims.T >= 2 && m.w_q + m.w_r < m.w_p;
    for (int k = bd.diagonal_steps; k < steps; ++k) {
        if (use_combo) {
            // Step back in time first so the diagonal move returns to this round.
            out.push_back(step_edge(EdgeType::kQ, -rdir, pos.x, pos.t, dims.orientation));
            pos.t -= rdir;
            if (pos.t < 1 || pos.t > dims.T) {
                throw ContractViolation("boundary_path: time step leaves the lattice");
            }
            r_move(rdir);
        } else {
            out.push_back(step_edge(EdgeType::kP, xdir, pos.x, pos.t, dims.orientation));
            pos.x += xdir;
        }
    }
    if (pos.t < 1 || pos.t > dims.T) {
        throw ContractViolation("boundary_path: path leaves the lattice in time");
    }
    return out;
}

double correction_weight(const Correction &correction, const WeightMetric &m) {
    double total = 0.0;
    for (const auto &e : correction.edges) {
        total += e.type == EdgeType::kP ? m.w_p : e.type == EdgeType::kQ ? m.w_q : m.w_r;
    }
    return total;
}

DecodeResult decode(const SyndromeVolume &syndrome, const WeightMetric &metric, const LatticeDims &dims,
                    const DecoderOptions &options) {
    if (!(syndrome.dims == dims)) {
        throw DomainError("syndrome", "dimensions do not match the lattice");
    }
    DecodeResult result;
    const std::vector<Defect> defects = syndrome.defects();
    const int n = static_cast<int>(defects.size());
    if (n == 0) {
        return result;
    }

    if (options.mode == MatchingMode::kDoubled) {
        MatchingGraph g = build_matching_graph(defects, metric, dims, options.prune);
        Matching m = solve_mwpm(g);
        result.matched_weight = m.total_weight;
        for (const auto &[a, b] : m.pairs()) {
            if (a < n && b < n) {
                result.pairs.push_back({a, b});
            } else if (a < n) {
                result.pairs.push_back({a, -1});
            }
        }
    } else {
        std::vector<double> bd(n);
        for (int i = 0; i < n; ++i) {
            bd[i] = boundary_distance(defects[i], metric, dims);
        }
        const int nodes = n + (n % 2);
        std::vector<WeightedEdge> edges;
        edges.reserve(static_cast<size_t>(n) * (n + 1) / 2);
        std::vector<char> via_boundary(static_cast<size_t>(n) * n, 0);
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                double direct = defect_distance_detail(defects[i], defects[j], metric, dims).weight;
                double split = bd[i] + bd[j];
                double w = direct;
                if (split < direct) {
                    w = split;
                    via_boundary[static_cast<size_t>(i) * n + j] = 1;
                }
                if (std::isfinite(w)) {
                    edges.push_back({i, j, w});
                }
            }
            if (n % 2 == 1 && std::isfinite(bd[i])) {
                edges.push_back({i, n, bd[i]});
            }
        }
        Matching m = min_weight_perfect_matching(nodes, edges);
        result.matched_weight = m.total_weight;
        for (const auto &[a, b] : m.pairs()) {
            if (b == n) {
                result.pairs.push_back({a, -1});
            } else if (via_boundary[static_cast<size_t>(a) * n + b]) {
                result.pairs.push_back({a, -1});
                result.pairs.push_back({b, -1});
            } else {
                result.pairs.push_back({a, b});
            }
        }
    }

    for (const auto &mp : result.pairs) {
        std::vector<LatticeEdge> path = mp.partner < 0
                                            ? boundary_path(defects[mp.defect], metric, dims)
                                            : pair_path(defects[mp.defect], defects[mp.partner], metric, dims);
        result.correction.edges.insert(result.correction.edges.end(), path.begin(), path.end());
    }
    return result;
}

TrialOutcome run_trial(const LatticeDims &dims, const EffectiveRates &rates, const WeightMetric &metric, Rng &rng,
                       const DecoderOptions &options) {
    DisorderSample sample = sample_disorder(dims, rates, rng);
    ErrorChain chain = chain_from_disorder(sample);
    SyndromeVolume syndrome = syndrome_volume(chain, dims);
    DecodeResult decoded = decode(syndrome, metric, dims, options);
    TrialOutcome out;
    out.defects = syndrome.count();
    out.matched_weight = decoded.matched_weight;
    out.success = residual_logical_class(chain, decoded.correction) == LogicalClass::kTrivial;
    return out;
}

namespace {

LogicalErrorEstimate finish(std::uint64_t trials, std::uint64_t failures) {
    LogicalErrorEstimate e;
    e.trials = trials;
    e.failures = failures;
    if (trials > 0) {
        e.rate = static_cast<double>(failures) / static_cast<double>(trials);
        e.std_error = std::sqrt(e.rate * (1.0 - e.rate) / static_cast<double>(trials));
    }
    return e;
}

}  // namespace

LogicalErrorEstimate logical_error_trials(const LatticeDims &dims, const EffectiveRates &rates, std::uint64_t seed,
                                          std::uint64_t first_trial, std::uint64_t count,
                                          const DecoderOptions &options) {
    dims.validate();
    const WeightMetric metric = weight_metric(rates);
    std::uint64_t failures = 0;
    for (std::uint64_t k = first_trial; k < first_trial + count; ++k) {
        Rng rng(derive_seed(seed, k));
        if (!run_trial(dims, rates, metric, rng, options).success) {
            ++failures;
        }
    }
    return finish(count, failures);
}

LogicalErrorEstimate logical_error_rate(const LatticeDims &dims, const EffectiveRates &rates, std::uint64_t trials,
                                        std::uint64_t seed, const DecoderOptions &options) {
    if (trials == 0) {
        throw DomainError("trials", "need at least one trial");
    }
    return logical_error_trials(dims, rates, seed, 0, trials, options);
}

LogicalErrorEstimate merge_estimates(const LogicalErrorEstimate &a, const LogicalErrorEstimate &b) {
    return finish(a.trials + b.trials, a.failures + b.failures);
}

}  // namespace replab
