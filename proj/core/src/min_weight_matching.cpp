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

#include "replab/min_weight_matching.hpp"

#include <algorithm>
#include <cmath>

#include "replab/errors.hpp"

namespace replab {

namespace {

// Primal-dual blossom solver. Dual variables are stored doubled so that all
// quantities stay integral: slack(k) = dual[i] + dual[j] - 2 w_k.
//
// Vertices are 0..n-1, blossoms n..2n-1. An "endpoint" p identifies one end of
// edge p / 2; endpoint[p] is the vertex, and p ^ 1 is the opposite end.
class BlossomSolver {
  public:
    BlossomSolver(int n, std::span<const IntEdge> edges, bool max_cardinality)
        : n_(n), edges_(edges.begin(), edges.end()), max_cardinality_(max_cardinality) {}

    std::vector<int> solve();

  private:
    static constexpr int kFree = 0;
    static constexpr int kS = 1;
    static constexpr int kT = 2;
    static constexpr int kBreadcrumb = 4;

    int n_;
    std::vector<IntEdge> edges_;
    bool max_cardinality_;

    std::vector<int> endpoint_;
    std::vector<std::vector<int>> neighbend_;
    std::vector<int> mate_;
    std::vector<int> label_;
    std::vector<int> labelend_;
    std::vector<int> inblossom_;
    std::vector<int> blossomparent_;
    std::vector<std::vector<int>> blossomchilds_;
    std::vector<int> blossombase_;
    std::vector<std::vector<int>> blossomendps_;
    std::vector<int> bestedge_;
    std::vector<std::vector<int>> blossombestedges_;
    std::vector<char> has_bestedges_;
    std::vector<int> unusedblossoms_;
    std::vector<std::int64_t> dualvar_;
    std::vector<char> allowedge_;
    std::vector<int> queue_;

    std::int64_t slack(int k) const {
        const IntEdge &e = edges_[k];
        return dualvar_[e.u] + dualvar_[e.v] - 2 * e.weight;
    }

    static int wrap(int j, size_t size) {
        int s = static_cast<int>(size);
        return ((j % s) + s) % s;
    }

    template <typename F>
    void for_each_leaf(int b, F &&fn) const {
        if (b < n_) {
            fn(b);
            return;
        }
        for (int t : blossomchilds_[b]) {
            for_each_leaf(t, fn);
        }
    }

    std::vector<int> leaves(int b) const {
        std::vector<int> out;
        for_each_leaf(b, [&](int v) { out.push_back(v); });
        return out;
    }

    void assign_label(int w, int t, int p);
    int scan_blossom(int v, int w);
    void add_blossom(int base, int k);
    void expand_blossom(int b, bool endstage);
    void augment_blossom(int b, int v);
    void augment_matching(int k);
};

void BlossomSolver::assign_label(int w, int t, int p) {
    int b = inblossom_[w];
    label_[w] = label_[b] = t;
    labelend_[w] = labelend_[b] = p;
    bestedge_[w] = bestedge_[b] = -1;
    if (t == kS) {
        for_each_leaf(b, [&](int v) { queue_.push_back(v); });
    } else if (t == kT) {
        int base = blossombase_[b];
        assign_label(endpoint_[mate_[base]], kS, mate_[base] ^ 1);
    }
}

int BlossomSolver::scan_blossom(int v, int w) {
    std::vector<int> path;
    int base = -1;
    while (v != -1 || w != -1) {
        int b = inblossom_[v];
        if (label_[b] & kBreadcrumb) {
            base = blossombase_[b];
            break;
        }
        path.push_back(b);
        label_[b] = kS | kBreadcrumb;
        if (labelend_[b] == -1) {
            v = -1;
        } else {
            v = endpoint_[labelend_[b]];
            b = inblossom_[v];
            v = endpoint_[labelend_[b]];
        }
        if (w != -1) {
            std::swap(v, w);
        }
    }
    for (int b : path) {
        label_[b] = kS;
    }
    return base;
}

void BlossomSolver::add_blossom(int base, int k) {
    int v = edges_[k].u;
    int w = edges_[k].v;
    int bb = inblossom_[base];
    int bv = inblossom_[v];
    int bw = inblossom_[w];
    int b = unusedblossoms_.back();
    unusedblossoms_.pop_back();
    blossombase_[b] = base;
    blossomparent_[b] = -1;
    blossomparent_[bb] = b;
    std::vector<int> path;
    std::vector<int> endps;
    while (bv != bb) {
        blossomparent_[bv] = b;
        path.push_back(bv);
        endps.push_back(labelend_[bv]);
        v = endpoint_[labelend_[bv]];
        bv = inblossom_[v];
    }
    path.push_back(bb);
    std::reverse(path.begin(), path.end());
    std::reverse(endps.begin(), endps.end());
    endps.push_back(2 * k);
    while (bw != bb) {
        blossomparent_[bw] = b;
        path.push_back(bw);
        endps.push_back(labelend_[bw] ^ 1);
        w = endpoint_[labelend_[bw]];
        bw = inblossom_[w];
    }
    blossomchilds_[b] = path;
    blossomendps_[b] = endps;
    label_[b] = kS;
    labelend_[b] = labelend_[bb];
    dualvar_[b] = 0;
    for_each_leaf(b, [&](int leaf) {
        if (label_[inblossom_[leaf]] == kT) {
            queue_.push_back(leaf);
        }
        inblossom_[leaf] = b;
    });

    std::vector<int> bestedgeto(2 * n_, -1);
    auto consider = [&](int kk) {
        int i = edges_[kk].u;
        int j = edges_[kk].v;
        if (inblossom_[j] == b) {
            std::swap(i, j);
        }
        int bj = inblossom_[j];
        if (bj != b && label_[bj] == kS && (bestedgeto[bj] == -1 || slack(kk) < slack(bestedgeto[bj]))) {
            bestedgeto[bj] = kk;
        }
    };
    for (int sub : path) {
        if (!has_bestedges_[sub]) {
            for_each_leaf(sub, [&](int leaf) {
                for (int p : neighbend_[leaf]) {
                    consider(p / 2);
                }
            });
        } else {
            for (int kk : blossombestedges_[sub]) {
                consider(kk);
            }
        }
        blossombestedges_[sub].clear();
        has_bestedges_[sub] = 0;
        bestedge_[sub] = -1;
    }
    std::vector<int> best;
    for (int kk : bestedgeto) {
        if (kk != -1) {
            best.push_back(kk);
        }
    }
    bestedge_[b] = -1;
    for (int kk : best) {
        if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b])) {
            bestedge_[b] = kk;
        }
    }
    blossombestedges_[b] = std::move(best);
    has_bestedges_[b] = 1;
}

void BlossomSolver::expand_blossom(int b, bool endstage) {
    std::vector<int> childs = blossomchilds_[b];
    for (int s : childs) {
        blossomparent_[s] = -1;
        if (s < n_) {
            inblossom_[s] = s;
        } else if (endstage && dualvar_[s] == 0) {
            expand_blossom(s, endstage);
        } else {
            for_each_leaf(s, [&](int leaf) { inblossom_[leaf] = s; });
        }
    }
    if (!endstage && label_[b] == kT) {
        const std::vector<int> &ch = blossomchilds_[b];
        const std::vector<int> &ep = blossomendps_[b];
        int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
        int j = static_cast<int>(std::find(ch.begin(), ch.end(), entrychild) - ch.begin());
        int jstep;
        int endptrick;
        if (j & 1) {
            j -= static_cast<int>(ch.size());
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }
        int p = labelend_[b];
        while (j != 0) {
            label_[endpoint_[p ^ 1]] = kFree;
            label_[endpoint_[ep[wrap(j - endptrick, ep.size())] ^ endptrick ^ 1]] = kFree;
            assign_label(endpoint_[p ^ 1], kT, p);
            allowedge_[ep[wrap(j - endptrick, ep.size())] / 2] = 1;
            j += jstep;
            p = ep[wrap(j - endptrick, ep.size())] ^ endptrick;
            allowedge_[p / 2] = 1;
            j += jstep;
        }
        int bv = ch[wrap(j, ch.size())];
        label_[endpoint_[p ^ 1]] = label_[bv] = kT;
        labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
        bestedge_[bv] = -1;
        j += jstep;
        while (ch[wrap(j, ch.size())] != entrychild) {
            bv = ch[wrap(j, ch.size())];
            if (label_[bv] == kS) {
                j += jstep;
                continue;
            }
            int found = -1;
            for_each_leaf(bv, [&](int leaf) {
                if (found == -1 && label_[leaf] != kFree) {
                    found = leaf;
                }
            });
            if (found != -1) {
                label_[found] = kFree;
                label_[endpoint_[mate_[blossombase_[bv]]]] = kFree;
                assign_label(found, kT, labelend_[found]);
            }
            j += jstep;
        }
    }
    label_[b] = labelend_[b] = -1;
    blossomchilds_[b].clear();
    blossomendps_[b].clear();
    blossombase_[b] = -1;
    blossombestedges_[b].clear();
    has_bestedges_[b] = 0;
    bestedge_[b] = -1;
    unusedblossoms_.push_back(b);
}

void BlossomSolver::augment_blossom(int b, int v) {
    int t = v;
    while (blossomparent_[t] != b) {
        t = blossomparent_[t];
    }
    if (t >= n_) {
        augment_blossom(t, v);
    }
    std::vector<int> &ch = blossomchilds_[b];
    std::vector<int> &ep = blossomendps_[b];
    int i = static_cast<int>(std::find(ch.begin(), ch.end(), t) - ch.begin());
    int j = i;
    int jstep;
    int endptrick;
    if (i & 1) {
        j -= static_cast<int>(ch.size());
        jstep = 1;
        endptrick = 0;
    } else {
        jstep = -1;
        endptrick = 1;
    }
    while (j != 0) {
        j += jstep;
        t = ch[wrap(j, ch.size())];
        int p = ep[wrap(j - endptrick, ep.size())] ^ endptrick;
        if (t >= n_) {
            augment_blossom(t, endpoint_[p]);
        }
        j += jstep;
        t = ch[wrap(j, ch.size())];
        if (t >= n_) {
            augment_blossom(t, endpoint_[p ^ 1]);
        }
        mate_[endpoint_[p]] = p ^ 1;
        mate_[endpoint_[p ^ 1]] = p;
    }
    std::rotate(ch.begin(), ch.begin() + i, ch.end());
    std::rotate(ep.begin(), ep.begin() + i, ep.end());
    blossombase_[b] = blossombase_[ch[0]];
}

void BlossomSolver::augment_matching(int k) {
    const int ends[2][2] = {{edges_[k].u, 2 * k + 1}, {edges_[k].v, 2 * k}};
    for (const auto &sp : ends) {
        int s = sp[0];
        int p = sp[1];
        while (true) {
            int bs = inblossom_[s];
            if (bs >= n_) {
                augment_blossom(bs, s);
            }
            mate_[s] = p;
            if (labelend_[bs] == -1) {
                break;
            }
            int t = endpoint_[labelend_[bs]];
            int bt = inblossom_[t];
            s = endpoint_[labelend_[bt]];
            int j = endpoint_[labelend_[bt] ^ 1];
            if (bt >= n_) {
                augment_blossom(bt, j);
            }
            mate_[j] = labelend_[bt];
            p = labelend_[bt] ^ 1;
        }
    }
}

std::vector<int> BlossomSolver::solve() {
    const int n = n_;
    const int m = static_cast<int>(edges_.size());
    if (n == 0) {
        return {};
    }
    std::int64_t maxweight = 0;
    for (const auto &e : edges_) {
        if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n || e.u == e.v) {
            throw DomainError("edges", "edge endpoints must be distinct nodes in range");
        }
        maxweight = std::max(maxweight, e.weight);
    }
    endpoint_.resize(2 * m);
    neighbend_.assign(n, {});
    for (int k = 0; k < m; ++k) {
        endpoint_[2 * k] = edges_[k].u;
        endpoint_[2 * k + 1] = edges_[k].v;
        neighbend_[edges_[k].u].push_back(2 * k + 1);
        neighbend_[edges_[k].v].push_back(2 * k);
    }
    mate_.assign(n, -1);
    label_.assign(2 * n, kFree);
    labelend_.assign(2 * n, -1);
    inblossom_.resize(n);
    for (int v = 0; v < n; ++v) {
        inblossom_[v] = v;
    }
    blossomparent_.assign(2 * n, -1);
    blossomchilds_.assign(2 * n, {});
    blossombase_.assign(2 * n, -1);
    for (int v = 0; v < n; ++v) {
        blossombase_[v] = v;
    }
    blossomendps_.assign(2 * n, {});
    bestedge_.assign(2 * n, -1);
    blossombestedges_.assign(2 * n, {});
    has_bestedges_.assign(2 * n, 0);
    unusedblossoms_.clear();
    for (int b = n; b < 2 * n; ++b) {
        unusedblossoms_.push_back(b);
    }
    dualvar_.assign(2 * n, 0);
    std::fill(dualvar_.begin(), dualvar_.begin() + n, maxweight);
    allowedge_.assign(m, 0);

    for (int stage = 0; stage < n; ++stage) {
        std::fill(label_.begin(), label_.end(), kFree);
        std::fill(bestedge_.begin(), bestedge_.end(), -1);
        for (int b = n; b < 2 * n; ++b) {
            blossombestedges_[b].clear();
            has_bestedges_[b] = 0;
        }
        std::fill(allowedge_.begin(), allowedge_.end(), 0);
        queue_.clear();
        for (int v = 0; v < n; ++v) {
            if (mate_[v] == -1 && label_[inblossom_[v]] == kFree) {
                assign_label(v, kS, -1);
            }
        }
        bool augmented = false;
        while (true) {
            while (!queue_.empty() && !augmented) {
                int v = queue_.back();
                queue_.pop_back();
                for (int p : neighbend_[v]) {
                    int k = p / 2;
                    int w = endpoint_[p];
                    if (inblossom_[v] == inblossom_[w]) {
                        continue;
                    }
                    std::int64_t kslack = 0;
                    if (!allowedge_[k]) {
                        kslack = slack(k);
                        if (kslack <= 0) {
                            allowedge_[k] = 1;
                        }
                    }
                    if (allowedge_[k]) {
                        if (label_[inblossom_[w]] == kFree) {
                            assign_label(w, kT, p ^ 1);
                        } else if (label_[inblossom_[w]] == kS) {
                            int base = scan_blossom(v, w);
                            if (base >= 0) {
                                add_blossom(base, k);
                            } else {
                                augment_matching(k);
                                augmented = true;
                                break;
                            }
                        } else if (label_[w] == kFree) {
                            label_[w] = kT;
                            labelend_[w] = p ^ 1;
                        }
                    } else if (label_[inblossom_[w]] == kS) {
                        int b = inblossom_[v];
                        if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) {
                            bestedge_[b] = k;
                        }
                    } else if (label_[w] == kFree) {
                        if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) {
                            bestedge_[w] = k;
                        }
                    }
                }
            }
            if (augmented) {
                break;
            }

            int deltatype = -1;
            std::int64_t delta = 0;
            int deltaedge = -1;
            int deltablossom = -1;
            if (!max_cardinality_) {
                deltatype = 1;
                delta = *std::min_element(dualvar_.begin(), dualvar_.begin() + n);
            }
            for (int v = 0; v < n; ++v) {
                if (label_[inblossom_[v]] == kFree && bestedge_[v] != -1) {
                    std::int64_t d = slack(bestedge_[v]);
                    if (deltatype == -1 || d < delta) {
                        delta = d;
                        deltatype = 2;
                        deltaedge = bestedge_[v];
                    }
                }
            }
            for (int b = 0; b < 2 * n; ++b) {
                if (blossomparent_[b] == -1 && label_[b] == kS && bestedge_[b] != -1) {
                    std::int64_t d = slack(bestedge_[b]) / 2;
                    if (deltatype == -1 || d < delta) {
                        delta = d;
                        deltatype = 3;
                        deltaedge = bestedge_[b];
                    }
                }
            }
            for (int b = n; b < 2 * n; ++b) {
                if (blossombase_[b] >= 0 && blossomparent_[b] == -1 && label_[b] == kT &&
                    (deltatype == -1 || dualvar_[b] < delta)) {
                    delta = dualvar_[b];
                    deltatype = 4;
                    deltablossom = b;
                }
            }
            if (deltatype == -1) {
                deltatype = 1;
                delta = std::max<std::int64_t>(0, *std::min_element(dualvar_.begin(), dualvar_.begin() + n));
            }

            for (int v = 0; v < n; ++v) {
                int l = label_[inblossom_[v]];
                if (l == kS) {
                    dualvar_[v] -= delta;
                } else if (l == kT) {
                    dualvar_[v] += delta;
                }
            }
            for (int b = n; b < 2 * n; ++b) {
                if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
                    if (label_[b] == kS) {
                        dualvar_[b] += delta;
                    } else if (label_[b] == kT) {
                        dualvar_[b] -= delta;
                    }
                }
            }

            if (deltatype == 1) {
                break;
            } else if (deltatype == 2) {
                allowedge_[deltaedge] = 1;
                int i = edges_[deltaedge].u;
                int j = edges_[deltaedge].v;
                if (label_[inblossom_[i]] == kFree) {
                    std::swap(i, j);
                }
                queue_.push_back(i);
            } else if (deltatype == 3) {
                allowedge_[deltaedge] = 1;
                queue_.push_back(edges_[deltaedge].u);
            } else {
                expand_blossom(deltablossom, false);
            }
        }
        if (!augmented) {
            break;
        }
        for (int b = n; b < 2 * n; ++b) {
            if (blossomparent_[b] == -1 && blossombase_[b] >= 0 && label_[b] == kS && dualvar_[b] == 0) {
                expand_blossom(b, true);
            }
        }
    }
    std::vector<int> out(n, -1);
    for (int v = 0; v < n; ++v) {
        if (mate_[v] >= 0) {
            out[v] = endpoint_[mate_[v]];
        }
    }
    return out;
}

}  // namespace

std::vector<int> max_weight_matching(int num_nodes, std::span<const IntEdge> edges, bool max_cardinality) {
    if (num_nodes < 0) {
        throw DomainError("num_nodes", "must be nonnegative");
    }
    BlossomSolver solver(num_nodes, edges, max_cardinality);
    return solver.solve();
}

std::vector<std::pair<int, int>> Matching::pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < static_cast<int>(mate.size()); ++a) {
        if (mate[a] > a) {
            out.emplace_back(a, mate[a]);
        }
    }
    return out;
}

Matching min_weight_perfect_matching(int num_nodes, std::span<const WeightedEdge> edges) {
    Matching result;
    if (num_nodes == 0) {
        return result;
    }
    if (num_nodes % 2 != 0) {
        throw ContractViolation("min_weight_perfect_matching: odd node count");
    }
    double max_w = 0.0;
    for (const auto &e : edges) {
        if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) {
            throw DomainError("weight", "edge weights must be finite and nonnegative");
        }
        max_w = std::max(max_w, e.weight);
    }
    // Largest power of two keeping every scaled weight at or below 2^40.
    int exponent = 40;
    if (max_w > 0.0) {
        int e2 = 0;
        std::frexp(max_w, &e2);  // max_w < 2^e2
        exponent = 40 - e2;
    }
    std::vector<IntEdge> scaled;
    scaled.reserve(edges.size());
    std::int64_t max_scaled = 0;
    for (const auto &e : edges) {
        auto s = static_cast<std::int64_t>(std::llround(std::ldexp(e.weight, exponent)));
        max_scaled = std::max(max_scaled, s);
        scaled.push_back({e.u, e.v, s});
    }
    for (auto &e : scaled) {
        e.weight = max_scaled + 1 - e.weight;
    }
    result.mate = max_weight_matching(num_nodes, scaled, true);
    if (std::any_of(result.mate.begin(), result.mate.end(), [](int m) { return m < 0; })) {
        throw ContractViolation("min_weight_perfect_matching: graph has no perfect matching");
    }
    // Recover original weights; with parallel edges the cheapest one counts.
    std::vector<double> best(static_cast<size_t>(num_nodes), 0.0);
    std::vector<char> seen(static_cast<size_t>(num_nodes), 0);
    for (const auto &e : edges) {
        int a = std::min(e.u, e.v);
        int b = std::max(e.u, e.v);
        if (result.mate[a] == b && (!seen[a] || e.weight < best[a])) {
            best[a] = e.weight;
            seen[a] = 1;
        }
    }
    for (const auto &[a, b] : result.pairs()) {
        (void)b;
        result.total_weight += best[a];
    }
    return result;
}

}  // namespace replab
