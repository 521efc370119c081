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

#include "qsb/wiener.hpp"

#include "qsb/random.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qsb::wiener {

namespace {

MonteCarloReport summarize(const std::vector<double>& values, double target) {
    const double n = static_cast<double>(values.size());
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= std::max(n - 1.0, 1.0);
    MonteCarloReport r;
    r.n_paths = values.size();
    r.estimate = mean;
    r.target = target;
    r.std_error = std::sqrt(var / n);
    r.z_score = r.std_error > 0.0 ? (mean - target) / r.std_error : 0.0;
    return r;
}

double exponent(const std::vector<double>& u, const BrownianPath& path, std::size_t first,
                std::size_t last) {
    double s = 0.0;
    for (std::size_t j = first; j < last; ++j) {
        s += u[j] * path.increments[j] - 0.5 * u[j] * u[j] * path.grid->width(j);
    }
    return s;
}

}  // namespace

BrownianPath sample_path(const GridPtr& grid, std::uint64_t seed) {
    rng::CounterEngine engine(seed);
    BrownianPath p{grid, std::vector<double>(grid->slot_count())};
    for (std::size_t j = 0; j < grid->slot_count(); ++j) {
        p.increments[j] = std::sqrt(grid->width(j)) * engine.normal();
    }
    return p;
}

std::vector<double> real_values(const StepFunction& u) {
    if (u.modes() != 1) throw std::invalid_argument("wiener: u must have a single mode");
    std::vector<double> out(u.slot_count());
    for (std::size_t j = 0; j < u.slot_count(); ++j) {
        const Complex z = u.value(j)(0);
        if (z.imag() != 0.0) throw std::invalid_argument("wiener: u must be real-valued");
        out[j] = z.real();
    }
    return out;
}

double wiener_exponential(const StepFunction& u, const BrownianPath& path) {
    require_same_grid(u.grid(), path.grid, "wiener_exponential");
    return std::exp(exponent(real_values(u), path, 0, u.slot_count()));
}

MonteCarloReport exponential_mean(const StepFunction& u, std::size_t n_paths,
                                  std::uint64_t root_seed) {
    if (n_paths < 2) throw std::invalid_argument("exponential_mean: need at least two paths");
    std::vector<double> v(n_paths);
    for (std::size_t i = 0; i < n_paths; ++i) {
        v[i] = wiener_exponential(u, sample_path(u.grid(), rng::derive(root_seed, std::uint64_t{i})));
    }
    return summarize(v, 1.0);
}

MonteCarloReport exponential_product(const StepFunction& u, const StepFunction& w,
                                     std::size_t n_paths, std::uint64_t root_seed) {
    if (n_paths < 2) throw std::invalid_argument("exponential_product: need at least two paths");
    require_same_grid(u.grid(), w.grid(), "exponential_product");
    std::vector<double> v(n_paths);
    for (std::size_t i = 0; i < n_paths; ++i) {
        const BrownianPath p = sample_path(u.grid(), rng::derive(root_seed, std::uint64_t{i}));
        v[i] = wiener_exponential(u, p) * wiener_exponential(w, p);
    }
    return summarize(v, std::exp(l2_inner(u, w).real()));
}

ConditionalReport conditional_projection_check(const StepFunction& u, double t,
                                               std::size_t outer_paths, std::size_t inner_paths,
                                               std::uint64_t root_seed) {
    if (outer_paths == 0 || inner_paths < 2) {
        throw std::invalid_argument("conditional_projection_check: need outer >= 1, inner >= 2");
    }
    const GridPtr& grid = u.grid();
    const std::size_t k = grid->index_of(t);
    const std::size_t n = grid->slot_count();
    const std::vector<double> uv = real_values(u);
    ConditionalReport r;
    r.t = t;
    r.outer_paths = outer_paths;
    r.inner_paths = inner_paths;
    for (std::size_t o = 0; o < outer_paths; ++o) {
        const std::uint64_t outer_seed = rng::derive(root_seed, std::uint64_t{o});
        const BrownianPath prefix = sample_path(grid, rng::derive(outer_seed, "past"));
        const double target = std::exp(exponent(uv, prefix, 0, k));
        std::vector<double> values(inner_paths);
        for (std::size_t i = 0; i < inner_paths; ++i) {
            BrownianPath p = sample_path(grid, rng::derive(outer_seed, std::uint64_t{i}));
            std::copy(prefix.increments.begin(), prefix.increments.begin() + static_cast<long>(k),
                      p.increments.begin());
            const double full = std::exp(exponent(uv, p, 0, n));
            const double split = std::exp(exponent(uv, p, 0, k)) * std::exp(exponent(uv, p, k, n));
            r.max_split_residual = std::max(r.max_split_residual, std::abs(full - split));
            values[i] = full;
        }
        const MonteCarloReport m = summarize(values, target);
        r.max_residual = std::max(r.max_residual, std::abs(m.estimate - target));
        r.max_abs_z = std::max(r.max_abs_z, std::abs(m.z_score));
    }
    return r;
}

}  // namespace qsb::wiener
