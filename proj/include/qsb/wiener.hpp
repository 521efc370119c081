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

// wiener.hpp: Monte-Carlo realization of exponential vectors as Wiener
// functionals exp(int u dB - (1/2) int u^2 dt).

#pragma once

#include "qsb/grid.hpp"

#include <cstdint>
#include <vector>

namespace qsb::wiener {

/// Brownian increments on a grid, increment j ~ N(0, Delta_j).
struct BrownianPath {
    GridPtr grid;
    std::vector<double> increments;
};

/// Increments drawn from CounterEngine(seed) via Box-Muller, slot order.
BrownianPath sample_path(const GridPtr& grid, std::uint64_t seed);

/// Real step function in one mode; rejects complex values.
std::vector<double> real_values(const StepFunction& u);

/// exp(sum_j u_j dB_j - (1/2) sum_j u_j^2 Delta_j).
double wiener_exponential(const StepFunction& u, const BrownianPath& path);

struct MonteCarloReport {
    std::size_t n_paths = 0;
    double estimate = 0.0;
    double target = 0.0;
    double std_error = 0.0;
    double z_score = 0.0;
};

/// Path i uses seed rng::derive(root_seed, i).
MonteCarloReport exponential_mean(const StepFunction& u, std::size_t n_paths,
                                  std::uint64_t root_seed);
/// E[e~(u) e~(v)] against exp(<u|v>).
MonteCarloReport exponential_product(const StepFunction& u, const StepFunction& v,
                                     std::size_t n_paths, std::uint64_t root_seed);

struct ConditionalReport {
    double t = 0.0;
    std::size_t outer_paths = 0;
    std::size_t inner_paths = 0;
    /// max over outer paths of |mean_inner e~(u) - e~(1_[0,t] u)|.
    double max_residual = 0.0;
    /// max over outer paths of the residual in standard errors.
    double max_abs_z = 0.0;
    /// max over all paths of |e~(u) - e~(1_[0,t] u) e~(1_(t,T] u)|.
    double max_split_residual = 0.0;
};

/// Nested Monte Carlo: for every outer path the increments up to t are held
/// fixed and the future is resampled `inner_paths` times.
ConditionalReport conditional_projection_check(const StepFunction& u, double t,
                                               std::size_t outer_paths, std::size_t inner_paths,
                                               std::uint64_t root_seed);

}  // namespace qsb::wiener
