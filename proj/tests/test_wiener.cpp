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

#include "qsb/random.hpp"
#include "qsb/wiener.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace qsb;

namespace {

CVector real(double x) {
    CVector v(1);
    v << x;
    return v;
}

StepFunction sample_u(const GridPtr& grid) {
    std::vector<CVector> values;
    for (std::size_t j = 0; j < grid->slot_count(); ++j) values.push_back(real(0.8 - 0.2 * static_cast<double>(j)));
    return {grid, values};
}

}  // namespace

TEST_CASE("zero integrand gives the constant functional", "[wiener]") {
    const GridPtr grid = make_grid(TimeGrid::uniform(1.0, 4));
    const auto path = wiener::sample_path(grid, 1);
    REQUIRE(wiener::wiener_exponential(StepFunction::zero(grid, 1), path) == 1.0);
}

TEST_CASE("wiener exponential matches its defining formula", "[wiener]") {
    const GridPtr grid = make_grid(TimeGrid({0.0, 0.25, 1.0}));
    const StepFunction u(grid, {real(1.5), real(-0.5)});
    const auto path = wiener::sample_path(grid, 2);
    REQUIRE(path.increments.size() == 2);
    const double expected = std::exp(1.5 * path.increments[0] - 0.5 * path.increments[1] -
                                     0.5 * (2.25 * 0.25 + 0.25 * 0.75));
    REQUIRE(wiener::wiener_exponential(u, path) == Catch::Approx(expected).epsilon(1e-14));
}

TEST_CASE("complex or multimode integrands are rejected", "[wiener]") {
    const GridPtr grid = make_grid(TimeGrid::uniform(1.0, 1));
    CVector c(1);
    c << Complex(0.0, 1.0);
    REQUIRE_THROWS_AS(wiener::real_values(StepFunction::constant(grid, c)), std::invalid_argument);
    REQUIRE_THROWS_AS(wiener::real_values(StepFunction::zero(grid, 2)), std::invalid_argument);
}

TEST_CASE("brownian increments have the slot variances", "[wiener]") {
    const GridPtr grid = make_grid(TimeGrid({0.0, 0.1, 1.0}));
    const std::size_t n = 20000;
    double s0 = 0.0;
    double s1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto p = wiener::sample_path(grid, rng::derive(3, i));
        s0 += p.increments[0] * p.increments[0];
        s1 += p.increments[1] * p.increments[1];
    }
    REQUIRE(s0 / n == Catch::Approx(0.1).epsilon(0.05));
    REQUIRE(s1 / n == Catch::Approx(0.9).epsilon(0.05));
}

TEST_CASE("exponential mean, product and second moment", "[wiener]") {
    const GridPtr grid = make_grid(TimeGrid::uniform(1.0, 4));
    const StepFunction u = sample_u(grid);
    const StepFunction v = StepFunction::constant(grid, real(-0.5));
    const auto mean = wiener::exponential_mean(u, 20000, 4);
    REQUIRE(mean.target == 1.0);
    REQUIRE(std::abs(mean.z_score) < 5.0);
    const auto product = wiener::exponential_product(u, v, 20000, 5);
    REQUIRE(product.target == Catch::Approx(std::exp(l2_inner(u, v).real())));
    REQUIRE(std::abs(product.z_score) < 5.0);
    const auto second = wiener::exponential_product(u, u, 20000, 6);
    REQUIRE(second.target == Catch::Approx(std::exp(u.squared_norm())));
    REQUIRE(std::abs(second.z_score) < 5.0);
    REQUIRE(std::abs(second.estimate - second.target) < 5.0 * second.std_error);
}

TEST_CASE("conditional expectation projects onto the past", "[wiener]") {
    const GridPtr grid = make_grid(TimeGrid::uniform(1.0, 4));
    const StepFunction u = sample_u(grid);
    const auto mid = wiener::conditional_projection_check(u, 0.5, 10, 2000, 7);
    REQUIRE(mid.max_abs_z < 5.0);
    REQUIRE(mid.max_split_residual < 1e-12);

    const auto end = wiener::conditional_projection_check(u, 1.0, 5, 10, 8);
    REQUIRE(end.max_residual < 1e-12);

    const auto start = wiener::conditional_projection_check(u, 0.0, 5, 2000, 9);
    REQUIRE(start.max_abs_z < 5.0);
    REQUIRE_THROWS(wiener::conditional_projection_check(u, 0.3, 5, 10, 9));
}

TEST_CASE("Monte Carlo runs are deterministic in the seed", "[wiener]") {
    const GridPtr grid = make_grid(TimeGrid::uniform(1.0, 4));
    const StepFunction u = sample_u(grid);
    REQUIRE(wiener::exponential_mean(u, 500, 10).estimate == wiener::exponential_mean(u, 500, 10).estimate);
    REQUIRE(wiener::exponential_mean(u, 500, 10).estimate != wiener::exponential_mean(u, 500, 11).estimate);
    REQUIRE(wiener::sample_path(grid, 12).increments == wiener::sample_path(grid, 12).increments);
}
