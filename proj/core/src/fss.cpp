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

#include "replab/fss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/roots.hpp>

#include "replab/errors.hpp"

namespace replab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double mean_of(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) {
        s += x;
    }
    return s / static_cast<double>(v.size());
}

}  // namespace

double jackknife_error(std::span<const double> replicas) {
    const size_t n = replicas.size();
    if (n < 2) {
        throw DomainError("bins", "jackknife needs at least two bins");
    }
    double m = mean_of(replicas);
    double ss = 0.0;
    for (double r : replicas) {
        ss += (r - m) * (r - m);
    }
    return std::sqrt(ss * static_cast<double>(n - 1) / static_cast<double>(n));
}

JackknifeResult jackknife(std::span<const double> bins) {
    const size_t n = bins.size();
    if (n < 2) {
        throw DomainError("bins", "jackknife needs at least two bins");
    }
    double total = 0.0;
    for (double b : bins) {
        total += b;
    }
    std::vector<double> loo(n);
    for (size_t i = 0; i < n; ++i) {
        loo[i] = (total - bins[i]) / static_cast<double>(n - 1);
    }
    return {total / static_cast<double>(n), jackknife_error(loo)};
}

std::vector<AveragedPoint> disorder_average(const std::vector<ObservableSeries> &samples) {
    if (samples.empty()) {
        return {};
    }
    const ObservableSeries &first = samples.front();
    const size_t nt = first.temperatures.size();
    for (const auto &s : samples) {
        if (s.L != first.L || s.temperatures != first.temperatures) {
            throw DomainError("samples", "disorder samples must share L and the temperature ladder");
        }
    }
    const int L = first.L;
    const size_t ns = samples.size();
    std::vector<AveragedPoint> out(nt);
    for (size_t k = 0; k < nt; ++k) {
        AveragedPoint &pt = out[k];
        pt.temperature = first.temperatures[k];
        pt.samples = static_cast<int>(ns);
        std::vector<double> g0(ns);
        std::vector<double> gq(ns);
        double met = 0.0;
        double swp = 0.0;
        for (size_t i = 0; i < ns; ++i) {
            const ObservableSeries &s = samples[i];
            g0[i] = s.g0_mean(k);
            gq[i] = s.gq_mean(k);
            if (!correlation_length(g0[i], gq[i], L)) {
                ++pt.invalid_samples;
            }
            met += s.metropolis_acceptance[k];
            double pair_sum = 0.0;
            int pairs = 0;
            if (k >= 1) {
                pair_sum += s.swap_acceptance[k - 1];
                ++pairs;
            }
            if (k + 1 < nt) {
                pair_sum += s.swap_acceptance[k];
                ++pairs;
            }
            swp += pairs > 0 ? pair_sum / pairs : 0.0;
        }
        pt.metropolis_acceptance = met / static_cast<double>(ns);
        pt.swap_acceptance = swp / static_cast<double>(ns);
        pt.g0 = mean_of(g0);
        pt.gq = mean_of(gq);
        auto xi = correlation_length(pt.g0, pt.gq, L);
        pt.xi_over_L = xi ? *xi / L : kNaN;

        // Leave-one-out over samples, or over time bins of a single sample.
        std::vector<double> a = g0;
        std::vector<double> b = gq;
        if (ns == 1) {
            a = first.g0_bins[k];
            b = first.gq_bins[k];
        }
        const size_t m = a.size();
        double sa = 0.0;
        double sb = 0.0;
        for (size_t i = 0; i < m; ++i) {
            sa += a[i];
            sb += b[i];
        }
        std::vector<double> replicas;
        bool replicas_valid = true;
        for (size_t i = 0; i < m && m >= 2; ++i) {
            double ga = (sa - a[i]) / static_cast<double>(m - 1);
            double gb = (sb - b[i]) / static_cast<double>(m - 1);
            auto x = correlation_length(ga, gb, L);
            if (!x) {
                replicas_valid = false;
                break;
            }
            replicas.push_back(*x / L);
        }
        pt.error = (xi && replicas_valid && replicas.size() >= 2) ? jackknife_error(replicas) : kNaN;
    }
    return out;
}

void CurveFamily::validate() const {
    if (curves.size() < 2) {
        throw DomainError("curves", "need at least two lattice sizes");
    }
    const auto &ref = curves.front().points;
    if (ref.size() < 3) {
        throw DomainError("curves", "need at least three temperatures");
    }
    for (size_t k = 1; k < ref.size(); ++k) {
        if (!(ref[k].temperature > ref[k - 1].temperature)) {
            throw DomainError("curves", "temperatures must be strictly increasing");
        }
    }
    for (const auto &c : curves) {
        if (c.points.size() != ref.size()) {
            throw DomainError("curves", "curves must share one temperature grid");
        }
        for (size_t k = 0; k < ref.size(); ++k) {
            if (c.points[k].temperature != ref[k].temperature) {
                throw DomainError("curves", "curves must share one temperature grid");
            }
        }
    }
}

const char *to_string(EstimateMethod m) {
    return m == EstimateMethod::kCrossing ? "crossing" : "bracket";
}

CrossingOutcome find_crossing(const CurveFamily &family) {
    family.validate();
    std::vector<Curve> curves = family.curves;
    std::sort(curves.begin(), curves.end(), [](const Curve &a, const Curve &b) { return a.L < b.L; });
    const size_t nt = curves.front().points.size();
    CrossingOutcome out;

    // Overlap of the two largest sizes over the low-temperature quarter.
    {
        const Curve &big = curves[curves.size() - 1];
        const Curve &next = curves[curves.size() - 2];
        const size_t quarter = std::max<size_t>(1, (nt + 3) / 4);
        bool separated = false;
        for (size_t k = 0; k < quarter; ++k) {
            double d = big.points[k].value - next.points[k].value;
            double s = std::hypot(big.points[k].error, next.points[k].error);
            if (std::isfinite(d) && std::fabs(d) > s) {
                separated = true;
                break;
            }
        }
        if (!separated) {
            out.reason = "largest sizes overlap within errors at the low end of the grid";
            return out;
        }
    }

    ThresholdEstimate est;
    est.method = EstimateMethod::kCrossing;
    for (size_t i = 0; i < curves.size(); ++i) {
        for (size_t j = i + 1; j < curves.size(); ++j) {
            const auto &a = curves[i].points;
            const auto &b = curves[j].points;
            double best_sig = -1.0;
            PairCrossing best{curves[i].L, curves[j].L, kNaN, kNaN};
            for (size_t k = 0; k + 1 < nt; ++k) {
                double d0 = b[k].value - a[k].value;
                double d1 = b[k + 1].value - a[k + 1].value;
                if (!std::isfinite(d0) || !std::isfinite(d1)) {
                    continue;
                }
                if (!((d0 >= 0.0 && d1 < 0.0) || (d0 <= 0.0 && d1 > 0.0) || (d0 == 0.0 && d1 == 0.0))) {
                    continue;
                }
                double s0 = std::hypot(a[k].error, b[k].error);
                double s1 = std::hypot(a[k + 1].error, b[k + 1].error);
                double sig_den = std::hypot(s0, s1);
                double sig = sig_den > 0.0 ? std::fabs(d0 - d1) / sig_den : std::fabs(d0 - d1);
                if (sig <= best_sig) {
                    continue;
                }
                best_sig = sig;
                double t0 = a[k].temperature;
                double dt = a[k + 1].temperature - t0;
                double den = d0 - d1;
                if (den == 0.0) {
                    best.temperature = t0;
                    best.error = 0.0;
                } else {
                    best.temperature = t0 + dt * d0 / den;
                    best.error = dt * std::hypot(d1 * s0, d0 * s1) / (den * den);
                }
            }
            if (best_sig >= 0.0) {
                est.pairs.push_back(best);
            }
        }
    }
    if (est.pairs.empty()) {
        out.reason = "no pair of curves changes order on the grid";
        return out;
    }

    bool any_zero = std::any_of(est.pairs.begin(), est.pairs.end(), [](const PairCrossing &p) { return p.error == 0.0; });
    double wsum = 0.0;
    double vsum = 0.0;
    for (const auto &p : est.pairs) {
        double w = any_zero ? 1.0 : 1.0 / (p.error * p.error);
        wsum += w;
        vsum += w * p.temperature;
    }
    est.value = vsum / wsum;
    double propagated = 0.0;
    for (const auto &p : est.pairs) {
        double w = any_zero ? 1.0 : 1.0 / (p.error * p.error);
        propagated += (w / wsum) * p.error;
    }
    double spread = 0.0;
    if (est.pairs.size() >= 2) {
        double m = 0.0;
        for (const auto &p : est.pairs) {
            m += p.temperature;
        }
        m /= static_cast<double>(est.pairs.size());
        for (const auto &p : est.pairs) {
            spread += (p.temperature - m) * (p.temperature - m);
        }
        spread = std::sqrt(spread / static_cast<double>(est.pairs.size() - 1));
    }
    est.uncertainty = 2.0 * std::hypot(propagated, spread);
    out.estimate = est;
    return out;
}

BracketOutcome threshold_bracket(const std::vector<double> &grid, const std::vector<CrossingOutcome> &outcomes) {
    if (grid.size() != outcomes.size()) {
        throw DomainError("grid", "one crossing outcome per grid value required");
    }
    for (size_t k = 1; k < grid.size(); ++k) {
        if (!(grid[k] > grid[k - 1])) {
            throw DomainError("grid", "grid must be strictly increasing");
        }
    }
    BracketOutcome out;
    out.grid = grid;
    out.per_point = outcomes;
    if (grid.empty()) {
        out.inconclusive = true;
        out.hint = "empty grid";
        return out;
    }
    size_t first_none = grid.size();
    for (size_t k = 0; k < grid.size(); ++k) {
        if (!outcomes[k].crossed()) {
            first_none = k;
            break;
        }
    }
    if (first_none == grid.size()) {
        out.inconclusive = true;
        out.hint = "every grid value shows a crossing; extend the grid upward";
        return out;
    }
    if (first_none == 0) {
        out.inconclusive = true;
        out.hint = "no grid value shows a crossing; extend the grid downward";
        return out;
    }
    double lo = grid[first_none - 1];
    double hi = grid[first_none];
    ThresholdEstimate est;
    est.method = EstimateMethod::kBracket;
    est.value = 0.5 * (lo + hi);
    est.uncertainty = 0.5 * (hi - lo);
    est.lower = lo;
    est.upper = hi;
    out.estimate = est;
    return out;
}

BracketOutcome threshold_bracket(const std::vector<double> &grid, const std::function<CurveFamily(double)> &runner) {
    std::vector<CrossingOutcome> outcomes;
    outcomes.reserve(grid.size());
    for (double p : grid) {
        outcomes.push_back(find_crossing(runner(p)));
    }
    return threshold_bracket(grid, outcomes);
}

double exact_triangular_tc(double J1, double J2, double J3) {
    if (!(J1 > 0.0) || !std::isfinite(J1)) {
        throw DomainError("J1", "must be positive and finite");
    }
    if (!(J2 > 0.0) || !std::isfinite(J2)) {
        throw DomainError("J2", "must be positive and finite");
    }
    if (!(J3 >= 0.0) || !std::isfinite(J3)) {
        throw DomainError("J3", "must be nonnegative and finite");
    }
    auto f = [&](double T) {
        double s1 = std::sinh(2.0 * J1 / T);
        double s2 = std::sinh(2.0 * J2 / T);
        double s3 = std::sinh(2.0 * J3 / T);
        return s1 * s2 + s2 * s3 + s3 * s1 - 1.0;
    };
    double hi = 2.0 * (J1 + J2 + J3);
    while (f(hi) > 0.0) {
        hi *= 2.0;
    }
    double lo = 0.5 * hi;
    while (f(lo) < 0.0) {
        lo *= 0.5;
    }
    std::uintmax_t iters = 200;
    auto r = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(50), iters);
    return 0.5 * (r.first + r.second);
}

double nishimori_line(const CaseSpec &c, double p, const NishimoriOptions &options) {
    return nishimori_couplings(c.rates_at(p), options).nishimori_temperature();
}

double clean_reference_tc(const CaseSpec &c, double p, const NishimoriOptions &options) {
    // At p = 0 every coupling diverges; the ratios are taken just above it.
    NishimoriCouplings k = nishimori_couplings(c.rates_at(std::max(p, 1e-9)), options);
    return exact_triangular_tc(k.J[0], k.J[1], k.J[2]);
}

}  // namespace replab
