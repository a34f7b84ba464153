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

#include "replab/cases.hpp"
#include "replab/errors.hpp"
#include "replab/fss.hpp"
#include "replab/noise_model.hpp"

namespace {

using namespace replab;

// xi/L = f((T - Tc) L^(1/nu)) with a decreasing scaling function.
CurveFamily scaling_family(double tc, const std::vector<int> &sizes, double t_lo, double t_hi, int nt, double noise,
                           std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    CurveFamily fam;
    for (int L : sizes) {
        Curve c{L, {}};
        for (int k = 0; k < nt; ++k) {
            double T = t_lo + (t_hi - t_lo) * k / (nt - 1);
            double err = noise * (1 + 0.02 * L);
            double v = 0.6 - 0.3 * std::tanh((T - tc) * L / 4.0) + (noise > 0 ? err * g(rng) : 0.0);
            c.points.push_back({T, v, err});
        }
        fam.curves.push_back(c);
    }
    return fam;
}

// Curves that never cross: larger sizes sit lower everywhere.
CurveFamily disordered_family(const std::vector<int> &sizes, int nt, double noise) {
    CurveFamily fam;
    for (int L : sizes) {
        Curve c{L, {}};
        for (int k = 0; k < nt; ++k) {
            double T = 0.5 + 0.1 * k;
            c.points.push_back({T, 0.8 / (1 + T) - 0.01 * L, noise});
        }
        fam.curves.push_back(c);
    }
    return fam;
}

TEST(Jackknife, MeanAndStandardError) {
    std::vector<double> x{1.0, 2.0, 4.0, 7.0, 11.0};
    JackknifeResult r = jackknife(x);
    double m = 5.0;
    double var = 0;
    for (double v : x) var += (v - m) * (v - m);
    var /= (x.size() - 1);
    EXPECT_DOUBLE_EQ(r.mean, m);
    EXPECT_NEAR(r.std_error, std::sqrt(var / x.size()), 1e-14);
    EXPECT_THROW(jackknife(std::vector<double>{1.0}), DomainError);
    std::vector<double> reps{1.0, 1.0, 1.0};
    EXPECT_EQ(jackknife_error(reps), 0.0);
}

ObservableSeries series(int L, std::vector<double> temps, std::vector<std::vector<double>> g0,
                        std::vector<std::vector<double>> gq) {
    ObservableSeries s;
    s.L = L;
    s.temperatures = std::move(temps);
    s.g0_bins = std::move(g0);
    s.gq_bins = std::move(gq);
    s.energy_mean.assign(s.temperatures.size(), 0.0);
    s.metropolis_acceptance.assign(s.temperatures.size(), 0.5);
    s.swap_acceptance.assign(s.temperatures.size() - 1, 0.4);
    return s;
}

TEST(DisorderAverage, AveragesCorrelatorsBeforeTheRatio) {
    auto a = series(8, {1.0, 2.0}, {{10, 12}, {4, 4}}, {{2, 2}, {1, 1}});
    auto b = series(8, {1.0, 2.0}, {{6, 8}, {2, 2}}, {{1, 1}, {3, 3}});
    auto pts = disorder_average({a, b});
    ASSERT_EQ(pts.size(), 2u);
    double g0 = 9.0, gq = 1.5;
    double xi = std::sqrt(g0 / gq - 1) / (2 * std::sin(std::acos(-1.0) / 8));
    EXPECT_NEAR(pts[0].xi_over_L, xi / 8, 1e-14);
    EXPECT_EQ(pts[0].samples, 2);
    EXPECT_EQ(pts[0].invalid_samples, 0);
    // Second temperature: sample b alone has g0 < gq.
    EXPECT_EQ(pts[1].invalid_samples, 1);
    EXPECT_NEAR(pts[1].g0, 3.0, 1e-14);
    EXPECT_NEAR(pts[1].gq, 2.0, 1e-14);
    EXPECT_GT(pts[0].error, 0.0);
    EXPECT_DOUBLE_EQ(pts[0].swap_acceptance, 0.4);

    auto c = series(4, {1.0, 2.0}, {{10, 12}, {4, 4}}, {{2, 2}, {1, 1}});
    EXPECT_THROW(disorder_average({a, c}), DomainError);
}

TEST(DisorderAverage, SingleSampleUsesBins) {
    auto a = series(8, {1.0, 2.0}, {{10, 12, 11, 9}, {4, 4, 4, 4}}, {{2, 2, 2, 2}, {1, 1, 1, 1}});
    auto pts = disorder_average({a});
    EXPECT_GT(pts[0].error, 0.0);
    EXPECT_EQ(pts[1].error, 0.0);
}

TEST(FindCrossing, RecoversPlantedCriticalPointWithoutNoise) {
    std::mt19937_64 rng(1);
    for (double tc : {1.1, 1.76, 2.269}) {
        auto fam = scaling_family(tc, {8, 12, 16}, tc - 0.5, tc + 0.5, 21, 0.0, rng);
        CrossingOutcome o = find_crossing(fam);
        ASSERT_TRUE(o.crossed()) << o.reason;
        EXPECT_NEAR(o.estimate->value, tc, 0.01);
        EXPECT_EQ(o.estimate->pairs.size(), 3u);
        EXPECT_EQ(o.estimate->method, EstimateMethod::kCrossing);
    }
}

TEST(FindCrossing, UncertaintyCoversPlantedValue) {
    std::mt19937_64 rng(2);
    const int runs = 400;
    int covered = 0, crossed = 0;
    for (int r = 0; r < runs; ++r) {
        auto fam = scaling_family(2.0, {8, 12, 16}, 1.4, 2.6, 13, 0.01, rng);
        CrossingOutcome o = find_crossing(fam);
        if (!o.crossed()) continue;
        ++crossed;
        covered += std::abs(o.estimate->value - 2.0) <= o.estimate->uncertainty;
    }
    EXPECT_GE(crossed, runs * 0.95);
    EXPECT_GE(covered, 0.95 * crossed) << covered << " of " << crossed;
}

TEST(FindCrossing, ReportsNoCrossing) {
    CrossingOutcome o = find_crossing(disordered_family({8, 12, 16}, 10, 0.001));
    EXPECT_FALSE(o.crossed());
    EXPECT_FALSE(o.reason.empty());
    // Indistinguishable largest sizes.
    std::mt19937_64 rng(3);
    auto fam = scaling_family(2.0, {8, 12, 16}, 1.5, 2.5, 11, 0.0, rng);
    fam.curves[1].points = fam.curves[2].points;
    fam.curves[1].L = 12;
    for (auto &p : fam.curves[2].points) p.error = 0.05;
    EXPECT_FALSE(find_crossing(fam).crossed());
}

TEST(FindCrossing, Validation) {
    std::mt19937_64 rng(4);
    auto fam = scaling_family(2.0, {8}, 1.5, 2.5, 11, 0.0, rng);
    EXPECT_THROW(find_crossing(fam), DomainError);
    fam = scaling_family(2.0, {8, 16}, 1.5, 2.5, 11, 0.0, rng);
    fam.curves[1].points.pop_back();
    EXPECT_THROW(find_crossing(fam), DomainError);
}

TEST(ThresholdBracket, RecoversPlantedDisappearancePoint) {
    const std::vector<double> grid{0.02, 0.04, 0.06, 0.08, 0.10};
    for (size_t cut = 1; cut < grid.size(); ++cut) {
        const double p_last = grid[cut - 1];
        std::mt19937_64 rng(5);
        auto runner = [&](double p) {
            if (p <= p_last) return scaling_family(2.5 - 10 * p, {8, 12, 16}, 1.0, 3.0, 21, 0.0, rng);
            return disordered_family({8, 12, 16}, 21, 0.001);
        };
        BracketOutcome b = threshold_bracket(grid, runner);
        ASSERT_TRUE(b.estimate);
        EXPECT_FALSE(b.inconclusive);
        EXPECT_EQ(b.estimate->value, 0.5 * (grid[cut - 1] + grid[cut]));
        EXPECT_EQ(b.estimate->uncertainty, 0.5 * (grid[cut] - grid[cut - 1]));
        EXPECT_EQ(*b.estimate->lower, grid[cut - 1]);
        EXPECT_EQ(*b.estimate->upper, grid[cut]);
        EXPECT_EQ(b.estimate->method, EstimateMethod::kBracket);
        for (size_t k = 0; k < cut; ++k) {
            ASSERT_TRUE(b.per_point[k].crossed());
            EXPECT_NEAR(b.per_point[k].estimate->value, 2.5 - 10 * grid[k], 0.01);
        }
    }
}

TEST(ThresholdBracket, InconclusiveGrids) {
    std::vector<double> grid{0.01, 0.02};
    CrossingOutcome yes;
    yes.estimate = ThresholdEstimate{};
    CrossingOutcome no;
    no.reason = "none";
    auto all = threshold_bracket(grid, std::vector<CrossingOutcome>{yes, yes});
    EXPECT_TRUE(all.inconclusive);
    EXPECT_NE(all.hint.find("upward"), std::string::npos);
    auto none = threshold_bracket(grid, std::vector<CrossingOutcome>{no, no});
    EXPECT_TRUE(none.inconclusive);
    EXPECT_NE(none.hint.find("downward"), std::string::npos);
    EXPECT_THROW(threshold_bracket(grid, std::vector<CrossingOutcome>{yes}), DomainError);
}

TEST(ExactTriangularTc, KnownValues) {
    EXPECT_NEAR(exact_triangular_tc(1, 1, 0), 2.0 / std::log(1 + std::sqrt(2.0)), 1e-10);
    EXPECT_NEAR(exact_triangular_tc(1, 1, 1), 4.0 / std::log(3.0), 1e-10);
    // Anisotropic square lattice: sinh(2 J1 / T) sinh(2 J2 / T) = 1.
    double t = exact_triangular_tc(1.0, 0.5, 0.0);
    EXPECT_NEAR(std::sinh(2.0 / t) * std::sinh(1.0 / t), 1.0, 1e-10);
    EXPECT_NEAR(exact_triangular_tc(2, 2, 2), 2 * exact_triangular_tc(1, 1, 1), 1e-9);
    EXPECT_NEAR(exact_triangular_tc(0.3, 1, 0.7), exact_triangular_tc(1, 0.7, 0.3), 1e-10);
}

TEST(NishimoriLine, ConsistentWithCouplings) {
    CaseSpec c = preset_case("IV");
    double tn = nishimori_line(c, 0.06);
    EXPECT_NEAR(tn, 1.0 / (0.5 * std::log(0.94 / 0.06)), 1e-12);
    EXPECT_NEAR(clean_reference_tc(c, 0.06), 2.0 / std::log(1 + std::sqrt(2.0)), 1e-9);
    EXPECT_NEAR(clean_reference_tc(preset_case("II"), 0.0), 4.0 / std::log(3.0), 1e-6);
}

}  // namespace
