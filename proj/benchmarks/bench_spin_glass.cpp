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

#include <benchmark/benchmark.h>

#include "replab/cases.hpp"
#include "replab/rng.hpp"
#include "replab/spin_glass.hpp"

namespace {

// Parallel-tempering run for one disorder sample; items are site updates.
void BM_TemperingSample(benchmark::State &state) {
    const int L = static_cast<int>(state.range(0));
    const replab::BondLattice lattice =
        replab::build_bond_lattice(L, replab::preset_case("IV").rates_at(0.06), replab::NishimoriOptions{}, 7);
    replab::McSchedule schedule;
    schedule.temperatures = replab::geometric_ladder(1.45, 2.1, 8);
    schedule.n_met = 10;
    schedule.swap_rounds = 50;
    schedule.bins = 5;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto series = replab::run_disorder_sample(lattice, schedule, seed++);
        benchmark::DoNotOptimize(series);
    }
    const auto updates = static_cast<std::int64_t>(L) * L * schedule.temperatures.size() * schedule.n_met *
                         schedule.swap_rounds;
    state.SetItemsProcessed(state.iterations() * updates);
}
BENCHMARK(BM_TemperingSample)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
