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

// Acceptance suite: one check per criterion, one PASS/FAIL line each.
//
//   replab_acceptance [--only N] [--out DIR]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "exhaustive_decoder.hpp"
#include "oracles.hpp"
#include "replab/cases.hpp"
#include "replab/commands.hpp"
#include "replab/config.hpp"
#include "replab/decoder.hpp"
#include "replab/fss.hpp"
#include "replab/min_weight_matching.hpp"
#include "replab/noise_model.hpp"
#include "replab/spin_glass.hpp"
#include "replab/table_io.hpp"

namespace {

using namespace replab;
using nlohmann::json;
namespace fs = std::filesystem;

struct Result {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string &what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

fs::path g_out = "acceptance_out";

std::string fmt(double v, int prec = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    return buf;
}

void run_or_throw(const json &cfg, const std::string &command) {
    std::ostringstream out, err;
    int rc = run_command(parse_run_config(cfg, command), out, err);
    if (rc != kExitOk) {
        throw std::runtime_error(command + " exited with " + std::to_string(rc) + ": " + err.str());
    }
}

json load_json(const fs::path &p) {
    return json::parse(read_text(p));
}

// ---------------------------------------------------------------- 1

Result channel_factorization() {
    Result r;
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        double p2 = (15.0 / 16.0) * k / 19.0;
        worst = std::max(worst, verify_factorization(p2));
    }
    r.require(worst <= 1e-12, "PTM mismatch above 1e-12");
    const double lam = 1e-4;
    EffectiveRates e = effective_rates_from_circuit({lam, lam, lam, lam, lam});
    double ratio = e.r / e.p;
    r.require(std::abs(ratio - 1.0 / 6.0) <= 1e-3, "r/p off 1/6");
    r.detail << "max |R_twice - R_factored| = " << fmt(worst) << " over 20 values; r/p = " << fmt(ratio, 6)
             << " at uniform weak noise";
    return r;
}

// ---------------------------------------------------------------- 2

Result probability_algebra() {
    Result r;
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(1e-6, 0.5 - 1e-6);
    double worst_sum = 0.0, worst_rec = 0.0;
    const int vh[4][2] = {{1, 1}, {-1, 1}, {1, -1}, {-1, -1}};
    for (int n = 0; n < 1000; ++n) {
        EffectiveRates e{u(rng), u(rng), u(rng)};
        FundamentalProbs f = fundamental_probs(e);
        worst_sum = std::max(worst_sum, std::abs(f.sum() - 1.0));
        NishimoriCouplings k = nishimori_couplings(e, {Normalization::kNone, std::nullopt});
        for (int i = 0; i < 4; ++i) {
            int v = vh[i][0], h = vh[i][1];
            double rec = std::exp(k.kappa[0] + k.kappa[1] * h + k.kappa[2] * v + k.kappa[3] * v * h);
            worst_rec = std::max(worst_rec, std::abs(rec / f.pi[i] - 1.0));
        }
    }
    int nonzero = 0;
    for (int n = 0; n < 1000; ++n) {
        NishimoriCouplings k = nishimori_couplings(EffectiveRates{u(rng), u(rng), 0.0});
        nonzero += k.kappa[3] != 0.0;
    }
    r.require(worst_sum <= 1e-12, "sum of pi");
    r.require(worst_rec <= 1e-10, "coupling reconstruction");
    r.require(nonzero == 0, "kappa_3 nonzero at r = 0");
    r.detail << "max |sum pi - 1| = " << fmt(worst_sum) << ", max relative reconstruction error " << fmt(worst_rec)
             << ", kappa_3 != 0 at r = 0 in " << nonzero << "/1000";
    return r;
}

// ---------------------------------------------------------------- 3

// All ways to pair up the defects or send them to the boundary, enumerated.
double factorial_pairing(int n, const std::vector<double> &D, const std::vector<double> &B) {
    std::vector<char> used(n, 0);
    double best = oracle::kInf;
    std::function<void(double)> rec = [&](double acc) {
        int i = 0;
        while (i < n && used[i]) ++i;
        if (i == n) {
            best = std::min(best, acc);
            return;
        }
        used[i] = 1;
        rec(acc + B[i]);
        for (int j = i + 1; j < n; ++j) {
            if (used[j]) continue;
            used[j] = 1;
            rec(acc + D[i * n + j]);
            used[j] = 0;
        }
        used[i] = 0;
    };
    rec(0.0);
    return best;
}

Result matching_exactness() {
    Result r;
    std::mt19937_64 rng(3);
    int mismatches = 0, largest = 0;
    for (int inst = 0; inst < 1000; ++inst) {
        LatticeDims dims{3 + static_cast<int>(rng() % 10), 1 + static_cast<int>(rng() % 10),
                         rng() % 2 ? DiagonalOrientation::kRising : DiagonalOrientation::kFalling};
        // Dyadic weights keep every path and matching sum exact.
        auto w = [&] { return static_cast<double>(8 + rng() % 313) / 64.0; };
        WeightMetric m{w(), w(), w()};
        int n = 1 + static_cast<int>(rng() % 8);
        n = std::min(n, (dims.d - 1) * dims.T);
        std::vector<Defect> defects;
        while (static_cast<int>(defects.size()) < n) {
            Defect d{static_cast<int>(rng() % (dims.d - 1)), 1 + static_cast<int>(rng() % dims.T)};
            if (std::find(defects.begin(), defects.end(), d) == defects.end()) defects.push_back(d);
        }
        largest = std::max(largest, n);
        MatchingGraph full = build_matching_graph(defects, m, dims, false);
        std::vector<double> D(n * n), B(n);
        for (int i = 0; i < n; ++i) {
            B[i] = full.weight(i, n + i);
            for (int j = 0; j < n; ++j) D[i * n + j] = full.weight(i, j);
        }
        double brute = factorial_pairing(n, D, B);
        for (bool prune : {false, true}) {
            Matching got = solve_mwpm(build_matching_graph(defects, m, dims, prune));
            if (got.total_weight != brute) ++mismatches;
        }
    }
    r.require(mismatches == 0, "weight mismatch");
    r.detail << "1000 instances (up to " << largest << " defects, pruned and unpruned), " << mismatches
             << " inexact";
    return r;
}

// ---------------------------------------------------------------- 4

Result metric_correctness() {
    Result r;
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.1, 5.0);
    std::vector<WeightMetric> triples;
    for (int k = 0; k < 100; ++k) {
        double wp = u(rng), wr = u(rng), wq = u(rng);
        if (k % 4 == 0) wq = wp + wr;  // degenerate case w_r + w_p = w_q
        triples.push_back({wp, wq, wr});
    }
    int checked = 0, bad = 0, degenerate = 0;
    double worst = 0.0;
    for (const WeightMetric &m : triples) {
        degenerate += m.w_q == m.w_p + m.w_r;
        for (auto o : {DiagonalOrientation::kRising, DiagonalOrientation::kFalling}) {
            for (int dx = -6; dx <= 6; ++dx) {
                for (int dt = -6; dt <= 6; ++dt) {
                    double ref = oracle::unbounded_distance(dx, dt, m.w_p, m.w_q, m.w_r,
                                                            o == DiagonalOrientation::kRising);
                    double got = defect_distance({0, 0}, {dx, dt}, m, o);
                    double err = std::abs(got - ref) / (1.0 + ref);
                    worst = std::max(worst, err);
                    bad += err > 1e-12;
                    ++checked;
                }
            }
        }
    }
    r.require(bad == 0, "metric differs from shortest path");
    r.detail << checked << " displacements over 100 weight triples (" << degenerate
             << " with w_p + w_r = w_q), both orientations; max relative deviation " << fmt(worst);
    return r;
}

// ---------------------------------------------------------------- 5

Result decoder_oracle() {
    Result r;
    LatticeDims dims{3, 3};
    EffectiveRates rates{0.05, 0.05, 0.02};
    double exact = oracle::exact_failure_probability(dims, rates);
    LogicalErrorEstimate est = logical_error_rate(dims, rates, 100000, 5);
    double sigma = std::sqrt(exact * (1 - exact) / est.trials);
    double z = (est.rate - exact) / sigma;
    r.require(std::abs(z) <= 3.0, "outside 3 sigma");
    r.detail << "exact " << fmt(exact, 6) << " (2^19 configurations), sampled " << fmt(est.rate, 6) << " at 1e5 trials, "
             << fmt(z, 3) << " sigma";
    return r;
}

// ---------------------------------------------------------------- 6

json grid(double start, double stop, double step) {
    return {{"start", start}, {"stop", stop}, {"step", step}};
}

Result mwpm_thresholds() {
    Result r;
    const std::vector<std::pair<std::string, json>> runs{{"I", grid(0.066, 0.084, 0.003)},
                                                         {"II", grid(0.055, 0.073, 0.003)},
                                                         {"III", grid(0.042, 0.058, 0.004)},
                                                         {"IV", grid(0.088, 0.112, 0.004)}};
    std::map<std::string, std::pair<double, double>> pc;
    for (const auto &[name, p] : runs) {
        fs::path dir = g_out / "criterion6" / name;
        run_or_throw({{"out", dir.string()},
                      {"case", name},
                      {"p", p},
                      {"d", {7, 11, 15}},
                      {"trials", 100000},
                      {"chunk", 10000},
                      {"seed", 6}},
                     "decode-sweep");
        json th = load_json(dir / kDecodeThresholdsJson).at(0);
        if (!th["crossed"].get<bool>()) {
            r.require(false, "case " + name + " shows no crossing");
            continue;
        }
        pc[name] = {th["value"].get<double>(), th["uncertainty"].get<double>()};
        r.detail << name << ": " << fmt(pc[name].first) << " +/- " << fmt(pc[name].second, 2) << "; ";
    }
    if (pc.count("II")) r.require(std::abs(pc["II"].first - 0.064) <= 0.006, "case II outside 0.064 +/- 0.006");
    if (pc.count("IV")) r.require(std::abs(pc["IV"].first - 0.10) <= 0.01, "case IV outside 0.10 +/- 0.01");
    if (pc.size() == 4) {
        r.require(pc["I"].first > pc["II"].first && pc["II"].first > pc["III"].first, "ordering I > II > III");
    }
    r.detail << "targets II 0.064 +/- 0.006, IV 0.10 +/- 0.01, ordering I > II > III";
    return r;
}

// ---------------------------------------------------------------- 7, 8

json mc_schedule(int n_met, int rounds, int bins, double lo, double hi, int n) {
    return {{"n_met", n_met},
            {"swap_rounds", rounds},
            {"bins", bins},
            {"both_axes", true},
            {"ladder", {{"lo", lo}, {"hi", hi}, {"n", n}}}};
}

std::optional<std::pair<double, double>> fss_crossing(const fs::path &mc_dir, const fs::path &fss_dir) {
    run_or_throw({{"out", fss_dir.string()}, {"inputs", {mc_dir.string()}}}, "fss");
    json c = load_json(fss_dir / kThresholdsJson)["crossings"].at(0);
    if (!c["crossed"].get<bool>()) return std::nullopt;
    return std::pair{c["value"].get<double>(), c["uncertainty"].get<double>()};
}

Result clean_lattice_mc() {
    Result r;
    struct Setup {
        const char *name;
        double J3, target, tol, lo, hi;
    };
    for (const Setup &s : {Setup{"square", 0.0, 2.269, 0.05, 1.95, 2.6}, Setup{"triangular", 1.0, 3.641, 0.07, 3.2, 4.1}}) {
        fs::path dir = g_out / "criterion7" / s.name;
        run_or_throw({{"out", (dir / "mc").string()},
                      {"couplings", {{"J1", 1.0}, {"J2", 1.0}, {"J3", s.J3}}},
                      {"L", {8, 12, 16}},
                      {"samples", 1},
                      {"seed", 7},
                      {"schedule", mc_schedule(10, 20000, 20, s.lo, s.hi, 14)}},
                     "mc-run");
        double exact = exact_triangular_tc(1.0, 1.0, s.J3);
        auto x = fss_crossing(dir / "mc", dir / "fss");
        if (!x) {
            r.require(false, std::string(s.name) + ": no crossing");
            continue;
        }
        r.require(std::abs(x->first - s.target) <= s.tol, std::string(s.name) + " outside tolerance");
        r.require(std::abs(exact - s.target) <= 1e-3, std::string(s.name) + " exact value");
        r.detail << s.name << " T_c " << fmt(x->first) << " +/- " << fmt(x->second, 2) << " (exact " << fmt(exact)
                 << ", target " << s.target << " +/- " << s.tol << "); ";
    }
    return r;
}

Result disordered_mc() {
    Result r;
    fs::path dir = g_out / "criterion8";
    run_or_throw({{"out", (dir / "mc").string()},
                  {"case", "IV"},
                  {"p", 0.06},
                  {"L", {8, 12, 16}},
                  {"samples", 64},
                  {"seed", 8},
                  {"schedule", mc_schedule(10, 6000, 10, 1.45, 2.1, 14)}},
                 "mc-run");
    auto x = fss_crossing(dir / "mc", dir / "fss");
    if (!x) {
        r.require(false, "no crossing");
        return r;
    }
    r.require(std::abs(x->first - 1.76) <= 0.08, "outside 1.76 +/- 0.08");
    r.detail << "case IV p = 0.06, 64 samples: T_c " << fmt(x->first) << " +/- " << fmt(x->second, 2)
             << " (target 1.76 +/- 0.08)";
    return r;
}

// ---------------------------------------------------------------- 9

Result tiny_lattice() {
    Result r;
    const EffectiveRates rates = preset_case("II").rates_at(0.1);
    const std::vector<double> temps{1.0, 2.0, 3.5};
    McSchedule s;
    s.temperatures = temps;
    s.n_met = 1;
    s.swap_rounds = 200000;
    s.bins = 20;
    int compared = 0, outside = 0;
    double worst = 0.0;
    for (int sample = 0; sample < 10; ++sample) {
        BondLattice lat = build_bond_lattice(4, rates, NishimoriOptions{}, derive_seed(9, sample));
        ObservableSeries mc = run_disorder_sample(lat, s, derive_seed(90, sample));
        for (size_t k = 0; k < temps.size(); ++k) {
            ExactObservables ex = exhaustive_observables(lat, temps[k]);
            JackknifeResult g0 = jackknife(mc.g0_bins[k]);
            JackknifeResult gq = jackknife(mc.gq_bins[k]);
            for (auto [est, exact] : {std::pair{g0, ex.g0}, std::pair{gq, ex.gq}}) {
                double z = std::abs(est.mean - exact) / est.std_error;
                worst = std::max(worst, z);
                outside += z > 3.0;
                ++compared;
            }
        }
    }
    r.require(outside == 0, "deviation beyond 3 sigma");
    r.detail << compared << " comparisons (10 samples x 3 temperatures x G(0), G(q_min)), largest deviation "
             << fmt(worst, 3) << " sigma";
    return r;
}

// ---------------------------------------------------------------- 10

CurveFamily planted_family(double tc) {
    CurveFamily fam;
    for (int L : {8, 12, 16}) {
        Curve c{L, {}};
        for (int k = 0; k < 21; ++k) {
            double T = 1.0 + 0.1 * k;
            c.points.push_back({T, 0.6 - 0.3 * std::tanh((T - tc) * L / 10.0), 0.002});
        }
        fam.curves.push_back(c);
    }
    return fam;
}

CurveFamily uncrossed_family() {
    CurveFamily fam;
    for (int L : {8, 12, 16}) {
        Curve c{L, {}};
        for (int k = 0; k < 21; ++k) {
            double T = 1.0 + 0.1 * k;
            c.points.push_back({T, 0.5 / T - 0.01 * L, 0.002});
        }
        fam.curves.push_back(c);
    }
    return fam;
}

Result bracketing() {
    Result r;
    const std::vector<double> grid{0.02, 0.03, 0.04, 0.05, 0.06, 0.07, 0.08};
    int cases = 0;
    for (size_t cut = 1; cut < grid.size(); ++cut) {
        auto runner = [&](double p) {
            return p <= grid[cut - 1] ? planted_family(2.8 - 15 * p) : uncrossed_family();
        };
        BracketOutcome b = threshold_bracket(grid, runner);
        bool ok = b.estimate && !b.inconclusive && b.estimate->value == 0.5 * (grid[cut - 1] + grid[cut]) &&
                  b.estimate->uncertainty == 0.5 * (grid[cut] - grid[cut - 1]);
        for (size_t k = 0; ok && k < cut; ++k) {
            ok = b.per_point[k].crossed() && std::abs(b.per_point[k].estimate->value - (2.8 - 15 * grid[k])) < 0.02;
        }
        r.require(ok, "planted point at index " + std::to_string(cut));
        ++cases;
    }
    BracketOutcome all = threshold_bracket(grid, [](double p) { return planted_family(2.8 - 15 * p); });
    BracketOutcome none = threshold_bracket(grid, [](double) { return uncrossed_family(); });
    r.require(all.inconclusive && none.inconclusive, "inconclusive grids");
    r.detail << cases << " planted disappearance points recovered as exact midpoints with half-gap errors; "
             << "all-crossing and no-crossing grids flagged inconclusive";
    return r;
}

// ---------------------------------------------------------------- 11

Result determinism() {
    Result r;
    fs::path dir = g_out / "criterion11";
    auto sweep = [&](const std::string &tag, int workers) {
        fs::path out = dir / ("decode_" + tag);
        run_or_throw({{"out", out.string()},
                      {"cases", {"I", "IV"}},
                      {"p", {0.04, 0.07, 0.1}},
                      {"d", {5, 7}},
                      {"trials", 3000},
                      {"chunk", 700},
                      {"seed", 11},
                      {"workers", workers}},
                     "decode-sweep");
        return read_text(out / kDecodeSweepCsv);
    };
    auto mc = [&](const std::string &tag, int workers) {
        fs::path out = dir / ("mc_" + tag);
        run_or_throw({{"out", out.string()},
                      {"case", "II"},
                      {"p", {0.04, 0.08}},
                      {"L", {4, 6}},
                      {"samples", 5},
                      {"seed", 11},
                      {"workers", workers},
                      {"schedule", mc_schedule(2, 400, 4, 2.0, 5.0, 6)}},
                     "mc-run");
        return read_text(out / kMcRunCsv);
    };
    std::string d1 = sweep("w1", 1), d1b = sweep("w1_rerun", 1), d4 = sweep("w4", 4);
    std::string m1 = mc("w1", 1), m1b = mc("w1_rerun", 1), m4 = mc("w4", 4);
    r.require(d1 == d1b && d1 == d4, "decode-sweep CSV differs");
    r.require(m1 == m1b && m1 == m4, "mc-run CSV differs");
    r.detail << "decode-sweep (" << d1.size() << " bytes) and mc-run (" << m1.size()
             << " bytes) CSVs byte-identical across reruns and 1 vs 4 workers";
    return r;
}

struct Criterion {
    int id;
    const char *title;
    Result (*run)();
};

const Criterion kCriteria[] = {
    {1, "channel factorization", channel_factorization},
    {2, "probability algebra", probability_algebra},
    {3, "matching exactness", matching_exactness},
    {4, "metric correctness", metric_correctness},
    {5, "decoder oracle", decoder_oracle},
    {6, "MWPM thresholds", mwpm_thresholds},
    {7, "clean-lattice MC", clean_lattice_mc},
    {8, "disordered MC spot check", disordered_mc},
    {9, "tiny-lattice equivalence", tiny_lattice},
    {10, "threshold bracketing", bracketing},
    {11, "determinism", determinism},
};

}  // namespace

int main(int argc, char **argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--only") && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else if (!std::strcmp(argv[i], "--out") && i + 1 < argc) {
            g_out = argv[++i];
        } else {
            std::cerr << "usage: replab_acceptance [--only N] [--out DIR]\n";
            return 2;
        }
    }
    bool all_pass = true;
    int ran = 0;
    for (const Criterion &c : kCriteria) {
        if (only && c.id != only) continue;
        ++ran;
        auto t0 = std::chrono::steady_clock::now();
        Result res;
        try {
            res = c.run();
        } catch (const std::exception &e) {
            res.pass = false;
            res.detail << "error: " << e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        all_pass = all_pass && res.pass;
        std::cout << (res.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.title << "): "
                  << res.detail.str() << " [" << fmt(secs, 3) << " s]" << std::endl;
    }
    if (ran == 0) {
        std::cerr << "no criterion " << only << "\n";
        return 2;
    }
    return all_pass ? 0 : 1;
}
