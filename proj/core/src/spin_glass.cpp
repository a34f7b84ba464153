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

#include "replab/spin_glass.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "replab/error_lattice.hpp"
#include "replab/errors.hpp"

namespace replab {

namespace {

void check_size(int L) {
    if (L < 2) {
        throw DomainError("L", "lattice size must be at least 2");
    }
}

struct Neighbors {
    int right, left, up, down, fwd, back;
};

std::vector<Neighbors> neighbor_table(const BondLattice &lat) {
    std::vector<Neighbors> nb(lat.num_sites());
    for (int y = 0; y < lat.L; ++y) {
        for (int x = 0; x < lat.L; ++x) {
            nb[lat.site(x, y)] = {lat.site(x + 1, y),     lat.site(x - 1, y),    lat.site(x, y + 1),
                                  lat.site(x, y - 1), lat.site(x + 1, y + 1), lat.site(x - 1, y - 1)};
        }
    }
    return nb;
}

}  // namespace

BondLattice clean_bond_lattice(int L, double J1, double J2, double J3) {
    check_size(L);
    BondLattice lat;
    lat.L = L;
    lat.J1 = J1;
    lat.J2 = J2;
    lat.J3 = J3;
    lat.horiz.assign(L * L, 1);
    lat.vert.assign(L * L, 1);
    lat.diag.assign(L * L, 1);
    return lat;
}

BondLattice build_bond_lattice(int L, const EffectiveRates &rates, double J1, double J2, double J3,
                               std::uint64_t seed) {
    rates.validate();
    BondLattice lat = clean_bond_lattice(L, J1, J2, J3);
    lat.seed = seed;
    Rng rng(seed);
    for (int y = 0; y < L; ++y) {
        for (int x = 0; x < L; ++x) {
            CellDraw c = draw_cell(rng, rates);
            CellSigns s = cell_signs(c.z_p, c.z_q, c.z_r);
            int site = lat.site(x, y);
            lat.horiz[site] = s.v;
            lat.vert[lat.site(x + 1, y)] = s.h;
            lat.diag[site] = static_cast<std::int8_t>(s.v * s.h);
        }
    }
    return lat;
}

BondLattice build_bond_lattice(int L, const EffectiveRates &rates, const NishimoriOptions &options,
                               std::uint64_t seed) {
    NishimoriCouplings k = nishimori_couplings(rates, options);
    return build_bond_lattice(L, rates, k.J[0], k.J[1], k.J[2], seed);
}

BondSums bond_sums(const BondLattice &lat, const std::vector<std::int8_t> &spins) {
    if (spins.size() != static_cast<size_t>(lat.num_sites())) {
        throw DomainError("spins", "configuration size does not match the lattice");
    }
    BondSums s;
    for (int y = 0; y < lat.L; ++y) {
        for (int x = 0; x < lat.L; ++x) {
            int i = lat.site(x, y);
            s.a += lat.horiz[i] * spins[i] * spins[lat.site(x + 1, y)];
            s.b += lat.vert[i] * spins[i] * spins[lat.site(x, y + 1)];
            s.c += lat.diag[i] * spins[i] * spins[lat.site(x + 1, y + 1)];
        }
    }
    return s;
}

double energy_of(const BondLattice &lat, const BondSums &s) {
    return -(lat.J2 * static_cast<double>(s.a) + lat.J1 * static_cast<double>(s.b) +
             lat.J3 * static_cast<double>(s.c));
}

double total_energy(const BondLattice &lat, const std::vector<std::int8_t> &spins) {
    return energy_of(lat, bond_sums(lat, spins));
}

ReplicaState ReplicaState::random(const BondLattice &lat, Rng &rng) {
    ReplicaState st;
    st.spins.resize(lat.num_sites());
    for (auto &s : st.spins) {
        s = (rng() >> 63) ? 1 : -1;
    }
    st.sums = bond_sums(lat, st.spins);
    st.energy = energy_of(lat, st.sums);
    return st;
}

ReplicaState ReplicaState::all_up(const BondLattice &lat) {
    ReplicaState st;
    st.spins.assign(lat.num_sites(), 1);
    st.sums = bond_sums(lat, st.spins);
    st.energy = energy_of(lat, st.sums);
    return st;
}

void ReplicaState::check_cache(const BondLattice &lat) const {
    BondSums fresh = bond_sums(lat, spins);
    double e = energy_of(lat, fresh);
    if (!(fresh == sums) || std::fabs(e - energy) > 1e-9 * std::max(1.0, std::fabs(e))) {
        throw ContractViolation("replica energy cache disagrees with recomputation");
    }
}

MetropolisTable::MetropolisTable(const BondLattice &lat, double temperature) : temperature_(temperature) {
    if (!(temperature > 0.0) || !std::isfinite(temperature)) {
        throw DomainError("temperature", "must be positive and finite");
    }
    for (int a = -2; a <= 2; a += 2) {
        for (int b = -2; b <= 2; b += 2) {
            for (int c = -2; c <= 2; c += 2) {
                double dE = 2.0 * (lat.J2 * a + lat.J1 * b + lat.J3 * c);
                prob_[index(a, b, c)] = dE <= 0.0 ? 1.0 : std::exp(-dE / temperature);
            }
        }
    }
}

int metropolis_sweep(ReplicaState &st, const BondLattice &lat, const MetropolisTable &table, Rng &rng) {
    static thread_local int cached_L = -1;
    static thread_local std::vector<Neighbors> nb;
    if (cached_L != lat.L) {
        nb = neighbor_table(lat);
        cached_L = lat.L;
    }
    std::int8_t *sp = st.spins.data();
    const int n = lat.num_sites();
    int accepted = 0;
    for (int i = 0; i < n; ++i) {
        const Neighbors &q = nb[i];
        const int si = sp[i];
        const int a = si * (lat.horiz[i] * sp[q.right] + lat.horiz[q.left] * sp[q.left]);
        const int b = si * (lat.vert[i] * sp[q.up] + lat.vert[q.down] * sp[q.down]);
        const int c = si * (lat.diag[i] * sp[q.fwd] + lat.diag[q.back] * sp[q.back]);
        // Flipping changes the energy by 2 (J2 a + J1 b + J3 c).
        const double p = table.probability(a, b, c);
        if (p >= 1.0 || uniform01(rng) < p) {
            sp[i] = static_cast<std::int8_t>(-si);
            st.sums.a -= 2 * a;
            st.sums.b -= 2 * b;
            st.sums.c -= 2 * c;
            ++accepted;
        }
    }
    st.energy = energy_of(lat, st.sums);
    return accepted;
}

void parallel_tempering_step(TemperingState &state, Rng &rng, std::vector<std::uint64_t> *accepted,
                             std::vector<std::uint64_t> *attempted) {
    const size_t n = state.replicas.size();
    if (n != state.temperatures.size()) {
        throw DomainError("replicas", "one replica per temperature required");
    }
    for (size_t k = state.round % 2; k + 1 < n; k += 2) {
        double beta_lo = 1.0 / state.temperatures[k];
        double beta_hi = 1.0 / state.temperatures[k + 1];
        double x = (beta_lo - beta_hi) * (state.replicas[k].energy - state.replicas[k + 1].energy);
        if (attempted) {
            ++(*attempted)[k];
        }
        if (x >= 0.0 || uniform01(rng) < std::exp(x)) {
            std::swap(state.replicas[k], state.replicas[k + 1]);
            if (!state.replica_id.empty()) {
                std::swap(state.replica_id[k], state.replica_id[k + 1]);
            }
            if (accepted) {
                ++(*accepted)[k];
            }
        }
    }
    ++state.round;
}

FourierSample measure_g(const std::vector<std::int8_t> &spins, int L, bool both_axes) {
    if (spins.size() != static_cast<size_t>(L) * L) {
        throw DomainError("spins", "configuration size does not match L");
    }
    std::vector<double> col(L, 0.0);
    std::vector<double> row(L, 0.0);
    for (int y = 0; y < L; ++y) {
        for (int x = 0; x < L; ++x) {
            col[x] += spins[y * L + x];
            row[y] += spins[y * L + x];
        }
    }
    const double w = 2.0 * std::numbers::pi / L;
    auto mode = [&](const std::vector<double> &m) {
        double re = 0.0;
        double im = 0.0;
        for (int k = 0; k < L; ++k) {
            re += m[k] * std::cos(w * k);
            im += m[k] * std::sin(w * k);
        }
        return re * re + im * im;
    };
    double total = 0.0;
    for (double c : col) {
        total += c;
    }
    const double norm = static_cast<double>(L) * L;
    FourierSample out{total * total / norm, mode(col) / norm};
    if (both_axes) {
        out.gq = 0.5 * (out.gq + mode(row) / norm);
    }
    return out;
}

std::optional<double> correlation_length(double g0_mean, double gq_mean, int L) {
    if (!(gq_mean > 0.0) || !std::isfinite(g0_mean) || g0_mean / gq_mean < 1.0) {
        return std::nullopt;
    }
    return std::sqrt(g0_mean / gq_mean - 1.0) / (2.0 * std::sin(std::numbers::pi / L));
}

void McSchedule::validate() const {
    if (temperatures.empty()) {
        throw DomainError("temperatures", "ladder must not be empty");
    }
    for (size_t k = 0; k < temperatures.size(); ++k) {
        if (!(temperatures[k] > 0.0) || !std::isfinite(temperatures[k])) {
            throw DomainError("temperatures", "temperatures must be positive and finite");
        }
        if (k > 0 && !(temperatures[k] > temperatures[k - 1])) {
            throw DomainError("temperatures", "ladder must be strictly increasing");
        }
    }
    if (n_met < 1) {
        throw DomainError("n_met", "need at least one sweep between swaps");
    }
    if (swap_rounds < 1) {
        throw DomainError("swap_rounds", "need at least one round");
    }
    if (!(discard_fraction >= 0.0 && discard_fraction < 1.0)) {
        throw DomainError("discard_fraction", "must lie in [0, 1)");
    }
    if (measure_every < 1) {
        throw DomainError("measure_every", "must be positive");
    }
    if (bins < 2) {
        throw DomainError("bins", "need at least two bins");
    }
    int m = measurement_rounds();
    if (m < 1) {
        throw DomainError("swap_rounds", "schedule leaves no measurement rounds");
    }
    if (m < bins) {
        throw DomainError("bins", "fewer measurements than bins");
    }
}

int McSchedule::measurement_rounds() const {
    int discard = static_cast<int>(std::floor(discard_fraction * swap_rounds));
    int left = swap_rounds - discard;
    return left <= 0 ? 0 : (left + measure_every - 1) / measure_every;
}

std::vector<double> geometric_ladder(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2) {
        if (n == 1 && lo > 0.0) {
            return {lo};
        }
        throw DomainError("ladder", "need 0 < lo < hi and at least two temperatures");
    }
    std::vector<double> out(n);
    for (int k = 0; k < n; ++k) {
        out[k] = lo * std::pow(hi / lo, static_cast<double>(k) / (n - 1));
    }
    out.back() = hi;
    return out;
}

std::vector<double> default_ladder(double t_guess) {
    return geometric_ladder(0.5 * t_guess, 1.5 * t_guess, 24);
}

double ObservableSeries::g0_mean(size_t k) const {
    double s = 0.0;
    for (double v : g0_bins.at(k)) {
        s += v;
    }
    return s / static_cast<double>(g0_bins[k].size());
}

double ObservableSeries::gq_mean(size_t k) const {
    double s = 0.0;
    for (double v : gq_bins.at(k)) {
        s += v;
    }
    return s / static_cast<double>(gq_bins[k].size());
}

ObservableSeries run_disorder_sample(const BondLattice &lat, const McSchedule &schedule, std::uint64_t seed) {
    schedule.validate();
    const size_t nt = schedule.temperatures.size();
    Rng rng(seed);

    TemperingState pt;
    pt.temperatures = schedule.temperatures;
    std::vector<MetropolisTable> tables;
    tables.reserve(nt);
    for (size_t k = 0; k < nt; ++k) {
        pt.replicas.push_back(ReplicaState::random(lat, rng));
        pt.replica_id.push_back(static_cast<int>(k));
        tables.emplace_back(lat, schedule.temperatures[k]);
    }

    const int rounds = schedule.swap_rounds;
    const int discard = static_cast<int>(std::floor(schedule.discard_fraction * rounds));
    const int measurements = schedule.measurement_rounds();
    const int bins = schedule.bins;

    ObservableSeries out;
    out.L = lat.L;
    out.temperatures = schedule.temperatures;
    out.g0_bins.assign(nt, std::vector<double>(bins, 0.0));
    out.gq_bins.assign(nt, std::vector<double>(bins, 0.0));
    out.energy_mean.assign(nt, 0.0);
    std::vector<int> bin_count(bins, 0);
    std::vector<std::uint64_t> flips(nt, 0);
    std::vector<std::uint64_t> swaps_ok(nt, 0);
    std::vector<std::uint64_t> swaps_tried(nt, 0);

    int measured = 0;
    for (int r = 0; r < rounds; ++r) {
        for (size_t k = 0; k < nt; ++k) {
            for (int s = 0; s < schedule.n_met; ++s) {
                flips[k] += static_cast<std::uint64_t>(metropolis_sweep(pt.replicas[k], lat, tables[k], rng));
            }
        }
        if (nt >= 2) {
            parallel_tempering_step(pt, rng, &swaps_ok, &swaps_tried);
        }
        if (r >= discard && (r - discard) % schedule.measure_every == 0) {
            int bin = static_cast<int>(static_cast<long long>(measured) * bins / measurements);
            for (size_t k = 0; k < nt; ++k) {
                FourierSample f = measure_g(pt.replicas[k].spins, lat.L, schedule.both_axes);
                out.g0_bins[k][bin] += f.g0;
                out.gq_bins[k][bin] += f.gq;
                out.energy_mean[k] += pt.replicas[k].energy;
            }
            ++bin_count[bin];
            ++measured;
        }
    }
    for (size_t k = 0; k < nt; ++k) {
        for (int b = 0; b < bins; ++b) {
            out.g0_bins[k][b] /= bin_count[b];
            out.gq_bins[k][b] /= bin_count[b];
        }
        out.energy_mean[k] /= measured;
        pt.replicas[k].check_cache(lat);
    }
    const double sweeps = static_cast<double>(rounds) * schedule.n_met * lat.num_sites();
    out.metropolis_acceptance.resize(nt);
    for (size_t k = 0; k < nt; ++k) {
        out.metropolis_acceptance[k] = static_cast<double>(flips[k]) / sweeps;
    }
    out.swap_acceptance.assign(nt > 0 ? nt - 1 : 0, 0.0);
    for (size_t k = 0; k + 1 < nt; ++k) {
        out.swap_acceptance[k] =
            swaps_tried[k] == 0 ? 0.0 : static_cast<double>(swaps_ok[k]) / static_cast<double>(swaps_tried[k]);
    }
    return out;
}

ExactObservables exhaustive_observables(const BondLattice &lat, double temperature) {
    if (lat.L > 4) {
        throw DomainError("L", "exhaustive enumeration is limited to L <= 4");
    }
    if (!(temperature > 0.0)) {
        throw DomainError("temperature", "must be positive");
    }
    const int n = lat.num_sites();
    const std::uint64_t states = 1ull << n;
    std::vector<std::int8_t> spins(n);
    auto load = [&](std::uint64_t bits) {
        for (int i = 0; i < n; ++i) {
            spins[i] = ((bits >> i) & 1) ? -1 : 1;
        }
    };
    double e_min = std::numeric_limits<double>::infinity();
    for (std::uint64_t s = 0; s < states; ++s) {
        load(s);
        e_min = std::min(e_min, total_energy(lat, spins));
    }
    double z = 0.0;
    ExactObservables acc{0.0, 0.0, 0.0, 0.0};
    for (std::uint64_t s = 0; s < states; ++s) {
        load(s);
        double e = total_energy(lat, spins);
        double w = std::exp(-(e - e_min) / temperature);
        FourierSample fx = measure_g(spins, lat.L, false);
        FourierSample fb = measure_g(spins, lat.L, true);
        z += w;
        acc.g0 += w * fx.g0;
        acc.gq += w * fx.gq;
        acc.gq_y += w * (2.0 * fb.gq - fx.gq);
        acc.energy += w * e;
    }
    acc.g0 /= z;
    acc.gq /= z;
    acc.gq_y /= z;
    acc.energy /= z;
    return acc;
}

}  // namespace replab
