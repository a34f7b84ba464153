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

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "replab/error_lattice.hpp"
#include "replab/errors.hpp"

namespace {

using namespace replab;

TEST(CellSigns, AllEightRows) {
    struct Row {
        int zp, zq, zr, v, h;
    };
    const Row rows[] = {{1, 1, 1, 1, 1},    {1, 1, -1, -1, -1}, {1, -1, 1, 1, -1},  {1, -1, -1, -1, 1},
                        {-1, 1, 1, -1, 1},  {-1, 1, -1, 1, -1}, {-1, -1, 1, -1, -1}, {-1, -1, -1, 1, 1}};
    for (const Row &r : rows) {
        CellSigns s = cell_signs(r.zp, r.zq, r.zr);
        EXPECT_EQ(s.v, r.v);
        EXPECT_EQ(s.h, r.h);
        // Coupling signs J1 ~ h, J2 ~ v, J3 ~ v h.
        EXPECT_EQ(s.v * s.h, r.v * r.h);
    }
}

TEST(DrawCell, ConsumesThreeUniforms) {
    Rng a(42), b(42);
    draw_cell(a, {0.1, 0.2, 0.3});
    b.discard(3);
    EXPECT_EQ(a(), b());
    Rng c(42), e(42);
    draw_cell(c, {0.0, 0.0, 0.0});
    e.discard(3);
    EXPECT_EQ(c(), e());
}

TEST(DrawCell, FlipFrequenciesAreBinomial) {
    const EffectiveRates rates{0.07, 0.2, 0.013};
    const int n = 200000;
    Rng rng(7);
    int fp = 0, fq = 0, fr = 0, both = 0;
    for (int i = 0; i < n; ++i) {
        CellDraw c = draw_cell(rng, rates);
        fp += c.z_p < 0;
        fq += c.z_q < 0;
        fr += c.z_r < 0;
        both += c.z_p < 0 && c.z_q < 0;
    }
    auto check = [&](int k, double prob) {
        double sd = std::sqrt(n * prob * (1 - prob));
        EXPECT_LT(std::abs(k - n * prob), 5 * sd) << "prob " << prob;
    };
    check(fp, rates.p);
    check(fq, rates.q);
    check(fr, rates.r);
    check(both, rates.p * rates.q);
}

TEST(LatticeDims, Validation) {
    EXPECT_THROW((LatticeDims{1, 3}.validate()), DomainError);
    EXPECT_THROW((LatticeDims{3, 0}.validate()), DomainError);
    EXPECT_NO_THROW((LatticeDims{2, 1}.validate()));
    LatticeDims r{5, 3, DiagonalOrientation::kRising};
    LatticeDims f{5, 3, DiagonalOrientation::kFalling};
    EXPECT_EQ(r.partner_ancilla(0), 0);
    EXPECT_EQ(r.partner_ancilla(4), -1);
    EXPECT_EQ(f.partner_ancilla(0), -1);
    EXPECT_EQ(f.partner_ancilla(4), 3);
}

TEST(SampleDisorder, StructuralZeros) {
    for (auto o : {DiagonalOrientation::kRising, DiagonalOrientation::kFalling}) {
        LatticeDims dims{6, 4, o};
        DisorderSample s = sample_disorder(dims, {0.4, 0.4, 0.4}, 9);
        ASSERT_EQ(s.z_p.size(), 24u);
        for (int t = 1; t <= dims.T; ++t) {
            for (int i = 0; i < dims.d; ++i) {
                size_t c = s.cell(i, t);
                if (t == dims.T) {
                    EXPECT_EQ(s.z_q[c], 1);
                    EXPECT_EQ(s.z_r[c], 1);
                }
                if (dims.partner_ancilla(i) < 0) {
                    EXPECT_EQ(s.z_q[c], 1);
                }
            }
        }
    }
}

TEST(SampleDisorder, DeterministicPerSeed) {
    LatticeDims dims{7, 7};
    auto a = sample_disorder(dims, {0.1, 0.1, 0.1}, 123);
    auto b = sample_disorder(dims, {0.1, 0.1, 0.1}, 123);
    auto c = sample_disorder(dims, {0.1, 0.1, 0.1}, 124);
    EXPECT_EQ(a.z_p, b.z_p);
    EXPECT_EQ(a.z_r, b.z_r);
    EXPECT_NE(a.z_p, c.z_p);
}

oracle::History history_from(const DisorderSample &s) {
    const LatticeDims &dims = s.dims;
    const bool rising = dims.orientation == DiagonalOrientation::kRising;
    oracle::History h(dims.d, dims.T);
    for (int t = 1; t <= dims.T; ++t) {
        for (int i = 0; i < dims.d; ++i) {
            size_t c = s.cell(i, t);
            if (s.z_p[c] < 0) h.apply({'p', i, t}, rising);
            if (s.z_q[c] < 0) h.apply({'q', rising ? i : i - 1, t}, rising);
            if (s.z_r[c] < 0) h.apply({'r', i, t}, rising);
        }
    }
    return h;
}

TEST(SyndromeVolume, MatchesMeasurementModel) {
    for (auto o : {DiagonalOrientation::kRising, DiagonalOrientation::kFalling}) {
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            LatticeDims dims{2 + static_cast<int>(seed % 7), 1 + static_cast<int>(seed % 5), o};
            DisorderSample s = sample_disorder(dims, {0.15, 0.1, 0.12}, seed);
            ErrorChain chain = chain_from_disorder(s);
            SyndromeVolume syn = syndrome_volume(chain);
            oracle::History ref = history_from(s);
            EXPECT_EQ(syn.bits, ref.syndrome()) << "seed " << seed;
        }
    }
}

TEST(SyndromeVolume, DefectsOrderedByRoundThenAncilla) {
    LatticeDims dims{9, 6};
    SyndromeVolume syn = syndrome_volume(chain_from_disorder(sample_disorder(dims, {0.2, 0.2, 0.2}, 5)));
    auto defects = syn.defects();
    ASSERT_EQ(static_cast<int>(defects.size()), syn.count());
    EXPECT_TRUE(std::is_sorted(defects.begin(), defects.end(),
                               [](const Defect &a, const Defect &b) {
                                   return a.t != b.t ? a.t < b.t : a.x < b.x;
                               }));
    for (const Defect &d : defects) EXPECT_TRUE(syn.at(d.x, d.t));
}

TEST(SingleEvents, DefectSignatures) {
    LatticeDims dims{5, 4, DiagonalOrientation::kRising};
    auto defects_of = [&](LatticeEdge e) {
        ErrorChain c = ErrorChain::empty(dims);
        toggle_edge(c, e);
        return syndrome_volume(c).defects();
    };
    EXPECT_EQ(defects_of({EdgeType::kP, 2, 2}), (std::vector<Defect>{{1, 2}, {2, 2}}));
    EXPECT_EQ(defects_of({EdgeType::kQ, 3, 1}), (std::vector<Defect>{{3, 1}, {3, 2}}));
    EXPECT_EQ(defects_of({EdgeType::kR, 2, 2}), (std::vector<Defect>{{1, 2}, {2, 3}}));
    EXPECT_EQ(defects_of({EdgeType::kR, 0, 1}), (std::vector<Defect>{{0, 2}}));
    EXPECT_EQ(defects_of({EdgeType::kP, 4, 3}), (std::vector<Defect>{{3, 3}}));
    dims.orientation = DiagonalOrientation::kFalling;
    EXPECT_EQ(defects_of({EdgeType::kR, 2, 2}), (std::vector<Defect>{{2, 2}, {1, 3}}));
    // A measurement link in the last round has no later partner; qubits past
    // the ends are ignored.
    EXPECT_EQ(defects_of({EdgeType::kQ, 1, 4}), (std::vector<Defect>{{1, 4}}));
    EXPECT_TRUE(defects_of({EdgeType::kP, -1, 2}).empty());
}

TEST(Equivalence, PreservesSyndromeAndLogicalClass) {
    std::mt19937_64 gen(17);
    for (auto o : {DiagonalOrientation::kRising, DiagonalOrientation::kFalling}) {
        for (int rep = 0; rep < 100; ++rep) {
            LatticeDims dims{3 + rep % 5, 2 + rep % 4, o};
            ErrorChain chain = chain_from_disorder(sample_disorder(dims, {0.2, 0.15, 0.1}, 1000 + rep));
            SpinConfig spins = SpinConfig::all_up(dims);
            for (auto &s : spins.sigma) s = (gen() & 1) ? 1 : -1;
            ErrorChain moved = apply_equivalence(chain, spins);
            EXPECT_EQ(syndrome_volume(moved).bits, syndrome_volume(chain).bits);
            // Both chains carry the same net data flips up to the code's logical
            // operator being excluded: equivalences act trivially on the
            // final data state.
            Correction as_edges;
            for (int t = 1; t <= dims.T; ++t)
                for (int i = 0; i < dims.d; ++i)
                    if (moved.v_at(i, t) < 0) as_edges.edges.push_back({EdgeType::kP, i, t});
            for (int t = 1; t <= dims.T; ++t)
                for (int x = 0; x < dims.d - 1; ++x)
                    if (moved.h_at(x, t) < 0) as_edges.edges.push_back({EdgeType::kQ, x, t});
            EXPECT_EQ(residual_logical_class(chain, as_edges), LogicalClass::kTrivial);
        }
    }
}

TEST(ResidualLogicalClass, Classification) {
    LatticeDims dims{4, 3};
    ErrorChain chain = ErrorChain::empty(dims);
    Correction none;
    EXPECT_EQ(residual_logical_class(chain, none), LogicalClass::kTrivial);

    Correction all;
    for (int i = 0; i < dims.d; ++i) all.edges.push_back({EdgeType::kP, i, 2});
    EXPECT_EQ(residual_logical_class(chain, all), LogicalClass::kLogical);

    Correction one{{{EdgeType::kP, 1, 2}}};
    EXPECT_THROW(residual_logical_class(chain, one), ContractViolation);
}

TEST(Correction, DataFlipsAndChain) {
    LatticeDims dims{4, 3};
    Correction c{{{EdgeType::kP, 1, 1}, {EdgeType::kR, 1, 2}, {EdgeType::kR, 3, 1}, {EdgeType::kQ, 0, 1}}};
    auto flips = c.data_flips(dims);
    EXPECT_EQ(flips, (std::vector<std::uint8_t>{0, 0, 0, 1}));
    ErrorChain ch = c.as_chain(dims);
    EXPECT_EQ(ch.v_at(1, 1), -1);
    EXPECT_EQ(ch.v_at(1, 2), -1);
    EXPECT_EQ(ch.h_at(1, 2), -1);
    EXPECT_EQ(ch.h_at(0, 1), -1);
}

}  // namespace
