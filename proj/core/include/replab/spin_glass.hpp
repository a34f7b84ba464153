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

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "replab/noise_model.hpp"
#include "replab/rng.hpp"

namespace replab {

/// Periodic L x L triangular random-bond Ising lattice. Site s = y * L + x.
/// Bonds owned by site s: horizontal to s + x, vertical to s + y, diagonal to
/// s + x + y. Energy: -sum J2 horiz sigma sigma' + J1 vert sigma sigma' +
/// J3 diag sigma sigma'.
struct BondLattice {
    int L = 0;
    double J1 = 1.0;  ///< vertical magnitude
    double J2 = 1.0;  ///< horizontal magnitude
    double J3 = 0.0;  ///< diagonal magnitude
    std::vector<std::int8_t> horiz;
    std::vector<std::int8_t> vert;
    std::vector<std::int8_t> diag;
    std::uint64_t seed = 0;

    int num_sites() const {
        return L * L;
    }
    int site(int x, int y) const {
        return ((y % L + L) % L) * L + ((x % L + L) % L);
    }
};

/// Ferromagnetic lattice with the given magnitudes.
BondLattice clean_bond_lattice(int L, double J1, double J2, double J3);

/// Signs from one (z_p, z_q, z_r) draw per site: the cell at s sets
/// horiz[s] = v, vert[s + x] = h, diag[s] = v h with v = z_p z_r, h = z_q z_r,
/// so every cell triangle is unfrustrated. Magnitudes are the normalized
/// Nishimori couplings of the rates.
BondLattice build_bond_lattice(int L, const EffectiveRates &rates, const NishimoriOptions &options,
                               std::uint64_t seed);

/// Same signs with explicit magnitudes.
BondLattice build_bond_lattice(int L, const EffectiveRates &rates, double J1, double J2, double J3,
                               std::uint64_t seed);

/// Integer bond sums A (horizontal), B (vertical), C (diagonal) of
/// sign * sigma * sigma'; the energy is -(J2 A + J1 B + J3 C).
struct BondSums {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t c = 0;
    bool operator==(const BondSums &) const = default;
};

BondSums bond_sums(const BondLattice &lattice, const std::vector<std::int8_t> &spins);
double energy_of(const BondLattice &lattice, const BondSums &sums);
double total_energy(const BondLattice &lattice, const std::vector<std::int8_t> &spins);

struct ReplicaState {
    std::vector<std::int8_t> spins;
    BondSums sums;
    double energy = 0.0;

    static ReplicaState random(const BondLattice &lattice, Rng &rng);
    static ReplicaState all_up(const BondLattice &lattice);
    /// Throws ContractViolation if the cache disagrees with a recomputation.
    void check_cache(const BondLattice &lattice) const;
};

/// Metropolis acceptance probabilities for every local configuration at one
/// temperature, indexed by the three neighbor sums (each -2, 0 or 2).
class MetropolisTable {
  public:
    MetropolisTable(const BondLattice &lattice, double temperature);
    double temperature() const {
        return temperature_;
    }
    double probability(int a, int b, int c) const {
        return prob_[index(a, b, c)];
    }
    static int index(int a, int b, int c) {
        return ((a + 2) / 2) * 9 + ((b + 2) / 2) * 3 + (c + 2) / 2;
    }

  private:
    double temperature_;
    std::array<double, 27> prob_{};
};

/// One sequential sweep (each site once, in index order). Flips with
/// nonpositive energy change are accepted without consuming randomness.
/// Returns the number of accepted flips.
int metropolis_sweep(ReplicaState &state, const BondLattice &lattice, const MetropolisTable &table, Rng &rng);

/// Replicas at ascending temperatures; replica k is the configuration
/// currently held at temperatures[k].
struct TemperingState {
    std::vector<double> temperatures;
    std::vector<ReplicaState> replicas;
    std::vector<int> replica_id;  ///< provenance of each held configuration
    std::uint64_t round = 0;
};

/// Attempts swaps between adjacent temperatures, on even pairs (0-1, 2-3, ...)
/// for even rounds and odd pairs otherwise. A swap exchanges configurations
/// and is accepted with probability min(1, exp((b_i - b_j)(E_i - E_j))).
/// accepted/attempted are indexed by the lower temperature of the pair.
void parallel_tempering_step(TemperingState &state, Rng &rng, std::vector<std::uint64_t> *accepted = nullptr,
                             std::vector<std::uint64_t> *attempted = nullptr);

struct FourierSample {
    double g0;
    double gq;
};

/// G(k) = |sum_x sigma_x exp(i k.x)|^2 / L^2 at k = 0 and k = (2 pi / L, 0);
/// with both_axes the second entry averages the x and y minimal momenta.
FourierSample measure_g(const std::vector<std::int8_t> &spins, int L, bool both_axes = false);

/// Second-moment correlation length. Empty if gq <= 0 or g0 / gq < 1.
std::optional<double> correlation_length(double g0_mean, double gq_mean, int L);

struct McSchedule {
    std::vector<double> temperatures;
    int n_met = 800;             ///< sweeps between swap attempts
    int swap_rounds = 10000;     ///< Metropolis/swap repetitions
    double discard_fraction = 0.5;
    int measure_every = 1;       ///< swap rounds between measurements
    int bins = 10;
    bool both_axes = false;

    void validate() const;
    int measurement_rounds() const;
};

/// n temperatures spaced geometrically over [lo, hi].
std::vector<double> geometric_ladder(double lo, double hi, int n);

/// 24 temperatures over [0.5, 1.5] x t_guess.
std::vector<double> default_ladder(double t_guess);

struct ObservableSeries {
    int L = 0;
    std::vector<double> temperatures;
    std::vector<std::vector<double>> g0_bins;  ///< [temperature][bin]
    std::vector<std::vector<double>> gq_bins;
    std::vector<double> energy_mean;
    std::vector<double> metropolis_acceptance;
    std::vector<double> swap_acceptance;  ///< per adjacent pair (k, k + 1)

    double g0_mean(size_t k) const;
    double gq_mean(size_t k) const;
};

/// Full tempering run on one disorder realization: random initial spins,
/// n_met sweeps per temperature then one tempering step, repeated; the first
/// discard_fraction of rounds is dropped and the rest is measured into bins.
ObservableSeries run_disorder_sample(const BondLattice &lattice, const McSchedule &schedule, std::uint64_t seed);

struct ExactObservables {
    double g0;
    double gq;   ///< minimal momentum along x
    double gq_y; ///< minimal momentum along y
    double energy;
};

/// Exact Boltzmann averages by enumerating all 2^(L^2) states; L <= 4.
ExactObservables exhaustive_observables(const BondLattice &lattice, double temperature);

}  // namespace replab
