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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "replab/cases.hpp"
#include "replab/noise_model.hpp"
#include "replab/spin_glass.hpp"

namespace replab {

struct JackknifeResult {
    double mean;
    double std_error;
};

/// Leave-one-out jackknife of the mean. Throws DomainError for < 2 bins.
JackknifeResult jackknife(std::span<const double> bins);

/// Jackknife of an arbitrary statistic given its leave-one-out replicas and
/// the full-sample value.
double jackknife_error(std::span<const double> replicas);

/// One disorder-averaged temperature point of one lattice size.
struct AveragedPoint {
    double temperature = 0.0;
    double xi_over_L = 0.0;  ///< NaN when the averaged correlators are invalid
    double error = 0.0;
    double g0 = 0.0;
    double gq = 0.0;
    double metropolis_acceptance = 0.0;
    double swap_acceptance = 0.0;  ///< mean over the adjacent pairs touching this temperature
    int samples = 0;
    int invalid_samples = 0;  ///< samples whose own correlators give no valid xi
};

/// Thermal means per sample, then disorder means of G(0) and G(q_min), then
/// xi / L. Errors: leave-one-sample-out jackknife, or leave-one-bin-out when
/// only one sample exists. All samples must share L and the ladder.
std::vector<AveragedPoint> disorder_average(const std::vector<ObservableSeries> &samples);

struct CurvePoint {
    double temperature;
    double value;
    double error;
};

struct Curve {
    int L;
    std::vector<CurvePoint> points;
};

/// Curves of xi_L / L for several sizes on one shared temperature grid.
struct CurveFamily {
    std::vector<Curve> curves;

    /// Throws DomainError for fewer than 2 sizes, fewer than 3 temperatures or
    /// mismatched / unsorted grids.
    void validate() const;
};

enum class EstimateMethod { kCrossing, kBracket };

const char *to_string(EstimateMethod m);

struct PairCrossing {
    int L_small;
    int L_large;
    double temperature;
    double error;
};

struct ThresholdEstimate {
    double value = 0.0;
    double uncertainty = 0.0;
    EstimateMethod method = EstimateMethod::kCrossing;
    std::optional<double> lower;  ///< bracket endpoints
    std::optional<double> upper;
    std::vector<PairCrossing> pairs;
    std::string provenance;
};

struct CrossingOutcome {
    std::optional<ThresholdEstimate> estimate;
    std::string reason;  ///< why no crossing was reported

    bool crossed() const {
        return estimate.has_value();
    }
};

/// Pairwise crossings by linear interpolation between adjacent grid points
/// (per pair the sign change of largest significance), combined by an
/// inverse-variance weighted mean. The uncertainty is twice the quadrature sum
/// of the weighted pair error (pair estimates share curves, so errors are
/// averaged, not reduced) and the spread of the pair values. Reports no
/// crossing when no pair changes sign or the two largest sizes stay within
/// one combined standard error of each other over the lowest quarter of the
/// grid.
CrossingOutcome find_crossing(const CurveFamily &curves);

struct BracketOutcome {
    std::optional<ThresholdEstimate> estimate;
    bool inconclusive = false;
    std::string hint;  ///< direction to extend the grid when inconclusive
    std::vector<double> grid;
    std::vector<CrossingOutcome> per_point;
};

/// Runs find_crossing per grid value; the threshold is the midpoint between
/// the last crossing value and the first value without a crossing, with half
/// the gap as uncertainty.
BracketOutcome threshold_bracket(const std::vector<double> &grid,
                                 const std::function<CurveFamily(double)> &runner);

/// Same, from already computed outcomes aligned with the grid.
BracketOutcome threshold_bracket(const std::vector<double> &grid, const std::vector<CrossingOutcome> &outcomes);

/// Critical temperature of the clean anisotropic triangular Ising model:
/// root of s1 s2 + s2 s3 + s3 s1 = 1 with s_i = sinh(2 J_i / T).
double exact_triangular_tc(double J1, double J2, double J3);

/// 1 / kappa_norm for the case at grid value p.
double nishimori_line(const CaseSpec &c, double p, const NishimoriOptions &options = {});

/// exact_triangular_tc of the normalized Nishimori couplings at p (disorder
/// ignored); the ordered-phase reference used to place temperature ladders.
double clean_reference_tc(const CaseSpec &c, double p, const NishimoriOptions &options = {});

}  // namespace replab
