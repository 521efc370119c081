// Copyright 2026 The qsbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// random.hpp: counter-based random numbers and the seed derivation tree.
//
// Scheme:
//   mix(x)            SplitMix64 finalizer.
//   derive(p, i)      mix(p ^ mix(i + 0x9E3779B97F4A7C15)), a child seed.
//   derive(p, label)  derive(p, fnv1a64(label)).
//   CounterEngine(k)  n-th output is mix(k + n * 0x9E3779B97F4A7C15), n = 1, 2, ...
//   uniform()         ((x >> 11) + 0.5) * 2^-53, strictly inside (0, 1).
//   normal()          Box-Muller, sqrt(-2 ln u1) cos(2 pi u2); the sine branch
//                     is returned by the next call.
// A run with root seed r gives task i of stream "s" the engine
// CounterEngine(derive(derive(r, "s"), i)).

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>

namespace qsb::rng {

std::uint64_t mix(std::uint64_t x) noexcept;
std::uint64_t fnv1a64(std::string_view text) noexcept;
std::uint64_t derive(std::uint64_t parent, std::uint64_t index) noexcept;
std::uint64_t derive(std::uint64_t parent, std::string_view label) noexcept;

/// Satisfies UniformRandomBitGenerator, so it can drive <random> distributions.
class CounterEngine {
public:
    using result_type = std::uint64_t;

    explicit CounterEngine(std::uint64_t key) noexcept : key_(key) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;
    double uniform() noexcept;
    double normal() noexcept;

    std::uint64_t key() const noexcept { return key_; }
    std::uint64_t counter() const noexcept { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    std::optional<double> spare_;
};

}  // namespace qsb::rng
