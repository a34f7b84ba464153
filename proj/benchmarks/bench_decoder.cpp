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
#include "replab/decoder.hpp"

namespace {

// One memory experiment per iteration: sample, decode, classify.
void BM_DecodeTrial(benchmark::State &state) {
    const int d = static_cast<int>(state.range(0));
    const replab::LatticeDims dims{d, d};
    const replab::EffectiveRates rates = replab::preset_case("II").rates_at(0.06);
    std::uint64_t k = 0;
    for (auto _ : state) {
        auto est = replab::logical_error_trials(dims, rates, 42, k++, 1);
        benchmark::DoNotOptimize(est.failures);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_DecodeTrial)->Arg(7)->Arg(11)->Arg(15)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
