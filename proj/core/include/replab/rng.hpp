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
#include <random>
#include <string_view>

namespace replab {

using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits; portable across standard libraries.
inline double uniform01(Rng &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(Rng &rng, double probability) {
    return uniform01(rng) < probability;
}

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Stream seed for a child entity identified by an integer counter.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t counter) {
    return mix64(mix64(parent) ^ mix64(counter + 0x632BE59BD9B4E019ull));
}

/// Stream seed for a named entity path such as "mc/II/p=3/L=16/sample=12".
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::string_view path) {
    std::uint64_t h = 0xCBF29CE484222325ull;  // FNV-1a
    for (char c : path) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ull;
    }
    return derive_seed(parent, h);
}

}  // namespace replab
