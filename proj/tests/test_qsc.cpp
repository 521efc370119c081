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

#include "qsb/checks.hpp"
#include "qsb/qsc.hpp"
#include "qsb/random.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace qsb;
using numerics::max_abs;

namespace {

CVector scalar(Complex z) {
    CVector v(1);
    v << z;
    return v;
}

struct Setup {
    GridPtr grid;
    StepFunction f;
    StepFunction g;
};

Setup small_setup(std::size_t slots, double norm) {
    const GridPtr grid = make_grid(TimeGrid::uniform(1.0, slots));
    std::vector<CVector> fv;
    std::vector<CVector> gv;
    for (std::size_t j = 0; j < slots; ++j) {
        const double phase = 0.7 * static_cast<double>(j);
        fv.push_back(scalar(norm * std::polar(1.0, phase)));
        gv.push_back(scalar(norm * std::polar(1.0, -0.4 * phase + 0.3)));
    }
    return {grid, StepFunction(grid, fv), StepFunction(grid, gv)};
}

ito::StrengthFunction random_strength(const GridPtr& grid, std::uint64_t seed, double scale) {
    std::vector<ito::ItoMatrix> values;
    for (std::size_t j = 0; j < grid->slot_count(); ++j) {
        rng::CounterEngine engine(rng::derive(seed, j));
        values.push_back(checks::random_ito(engine, 1, scale));
    }
    return {grid, values};
}

}  // namespace

TEST_CASE("stochastic integral of zero and of time strengths", "[qsc]") {
    const GridPtr grid = make_grid(TimeGrid::uniform(1.0, 3));
    const auto space = qsc::make_space(grid, 1, 2);
    const auto id = qsc::AdaptedStepProcess::identity(space);
    const auto zero_l = qsc::AdaptedStepProcess::scalar(space, {0.0, 0.0, 0.0, 0.0});
    rng::CounterEngine engine(1);
    const auto n = ito::StrengthFunction::constant(grid, checks::random_ito(engine, 1, 1.0));
    REQUIRE(max_abs(qsc::stochastic_integral(zero_l, n, 1.0).to_dense()) == 0.0);

    const auto alpha = ito::StrengthFunction::constant(grid, ito::ItoMatrix::time(Complex(1.5, -0.5), 1));
    const CMatrix x = qsc::stochastic_integral(id, alpha, 2.0 / 3.0).to_dense();
    const auto dim = static_cast<Eigen::Index>(space->global_dim());
    REQUIRE(max_abs(CMatrix(x - (2.0 / 3.0) * Complex(1.5, -0.5) * CMatrix::Identity(dim, dim))) < 1e-14);
    REQUIRE(max_abs(qsc::stochastic_integral(id, n, 0.0).to_dense()) == 0.0);
}

TEST_CASE("stochastic integral matrix elements match nu_integral", "[qsc][property]") {
    const Setup s = small_setup(3, 0.2);
    const auto space = qsc::make_space(s.grid, 1, 6);
    const auto id = qsc::AdaptedStepProcess::identity(space);
    const CVector ef = qsc::embed_exponential(*space, s.f);
    const CVector eg = qsc::embed_exponential(*space, s.g);
    for (std::uint64_t i = 0; i < 5; ++i) {
        const auto n = random_strength(s.grid, rng::derive(2, i), 1.0);
        const Complex lhs = ef.dot(qsc::stochastic_integral(id, n, 1.0).apply(eg));
        const Complex rhs = ito::nu_integral(n, s.f, s.g, 1.0) * std::exp(l2_inner(s.f, s.g));
        REQUIRE(std::abs(lhs - rhs) < 1e-8);
    }
}

TEST_CASE("integral processes are adapted", "[qsc]") {
    const GridPtr grid = make_grid(TimeGrid::uniform(1.0, 3));
    const auto space = qsc::make_space(grid, 1, 2);
    const auto n = random_strength(grid, 3, 1.0);
    const auto x = qsc::integral_process(qsc::AdaptedStepProcess::identity(space), n);
    REQUIRE(x.size() == 4);
    for (std::size_t k = 0; k <= 3; ++k) {
        const CMatrix xk = x.value(k).to_dense();
        REQUIRE(x.value(k).support_end() <= k);
        for (std::size_t slot = k; slot < 3; ++slot) {
            const CMatrix inc = qsc::increment(space, slot, n.value(slot)).to_dense();
            REQUIRE(max_abs(numerics::commutator(xk, inc)) < 1e-13);
        }
    }
}

TEST_CASE("integral of the adjoint is the adjoint of the integral", "[qsc]") {
    const GridPtr grid = make_grid(TimeGrid::uniform(1.0, 3));
    const auto space = qsc::make_space(grid, 1, 2);
    const auto n = random_strength(grid, 4, 1.0);
    const auto l = qsc::integral_process(qsc::AdaptedStepProcess::identity(space), random_strength(grid, 5, 1.0));
    const CMatrix x = qsc::stochastic_integral(l, n, 1.0).to_dense();
    const CMatrix xa = qsc::stochastic_integral(l.adjoint(), ito::dagger(n), 1.0).to_dense();
    REQUIRE(max_abs(CMatrix(x.adjoint() - xa)) < 1e-13);
}

TEST_CASE("Gram engines agree", "[qsc][property]") {
    const Setup s = small_setup(4, 0.3);
    qsc::IntegralFamily family(s.grid, 1);
    const auto n1 = random_strength(s.grid, 6, 0.7);
    const auto n2 = random_strength(s.grid, 7, 0.7);
    const std::size_t a = family.add_integral(qsc::IntegralFamily::kIdentity, n1, 0.5);
    family.add_integral(a, n2);
    family.add_scalar({1.0, 2.0, Complex(0.0, 1.0), 0.5, -1.0});
    const auto space = qsc::make_space(s.grid, 1, 3);
    const auto dense = qsc::gram_dense(family, space, s.f, s.g);
    const auto factorized = qsc::gram_factorized(family, 3, s.f, s.g);
    REQUIRE(dense.size() == 5);
    for (std::size_t k = 0; k < dense.size(); ++k) {
        REQUIRE(max_abs(CMatrix(dense[k] - factorized[k])) < 1e-10);
    }
    const auto analytic = qsc::gram_analytic(family, s.f, s.g);
    const auto high = qsc::gram_factorized(family, 12, s.f, s.g);
    REQUIRE(max_abs(CMatrix(analytic.back() - high.back())) < 1e-10);
}

TEST_CASE("first formula holds for scalar and iterated integrands", "[qsc]") {
    const Setup s = small_setup(4, 0.15);
    const auto n = random_strength(s.grid, 8, 1.0);
    const auto space = qsc::make_space(s.grid, 1, 3);
    const auto l = qsc::AdaptedStepProcess::scalar(space, {1.0, 2.0, -1.0, 0.5, 3.0});
    const auto r = qsc::check_first_fundamental(l, n, s.f, s.g, 1.0);
    REQUIRE(r.abs_err < 1e-8);
    REQUIRE(r.engine == "dense");

    qsc::IntegralFamily family(s.grid, 1);
    const std::size_t it = family.add_integral(qsc::IntegralFamily::kIdentity, random_strength(s.grid, 9, 1.0));
    const auto rf = qsc::check_first_fundamental(family, it, n, s.f, s.g, 1.0, 3);
    REQUIRE(rf.abs_err < 1e-7);
}

TEST_CASE("second formula is exact for time strengths", "[qsc]") {
    const Setup s = small_setup(3, 0.3);
    qsc::IntegralFamily family(s.grid, 1);
    const auto n1 = ito::StrengthFunction::constant(s.grid, ito::ItoMatrix::time(Complex(0.7, 0.2), 1));
    const auto n2 = ito::StrengthFunction::constant(s.grid, ito::ItoMatrix::time(-1.1, 1));
    const auto r = qsc::check_second_fundamental(family, 0, n1, 0, n2, s.f, s.g, 1.0, 8);
    REQUIRE(r.abs_err < 1e-12);
    REQUIRE(r.abs_err_two_term < 1e-12);
}

TEST_CASE("second formula with pure creation needs the correction term", "[qsc]") {
    const Setup s = small_setup(4, 0.15);
    qsc::IntegralFamily family(s.grid, 1);
    const CVector psi = scalar(Complex(0.6, 0.3));
    const auto n = ito::StrengthFunction::constant(s.grid, ito::ItoMatrix::creation(psi));
    const auto r = qsc::check_second_fundamental(family, 0, n, 0, n, s.f, s.g, 1.0, 3);
    const double expected = psi.squaredNorm() * std::abs(std::exp(l2_inner(s.f, s.g)));
    REQUIRE(r.abs_err < 1e-7);
    REQUIRE(r.abs_err_two_term == Catch::Approx(expected).epsilon(1e-6));
}

TEST_CASE("second formula for class three integrands", "[qsc]") {
    const Setup s = small_setup(3, 0.15);
    const auto space = qsc::make_space(s.grid, 1, 4);
    rng::CounterEngine engine(10);
    std::vector<CMatrix> blocks;
    std::size_t dim = 1;
    for (std::size_t j = 0; j <= 3; ++j) {
        blocks.push_back(CMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)) +
                         0.2 * checks::random_matrix(engine, static_cast<int>(dim), 1.0));
        dim *= space->slot_dim();
    }
    const auto l = qsc::AdaptedStepProcess::from_prefix_blocks(space, blocks);
    const auto n1 = random_strength(s.grid, 11, 0.5);
    const auto n2 = random_strength(s.grid, 12, 0.5);
    const auto r = qsc::check_second_fundamental(l, n1, l, n2, s.f, s.g, 1.0);
    REQUIRE(r.abs_err < 1e-6);
    REQUIRE(r.abs_err_two_term > 10.0 * r.abs_err);
}

TEST_CASE("loglog slope recovers power laws", "[qsc]") {
    const std::vector<double> dt = {0.1, 0.05, 0.025, 0.0125};
    std::vector<double> err;
    for (double h : dt) err.push_back(3.0 * h * h);
    REQUIRE(qsc::loglog_slope(dt, err) == Catch::Approx(2.0));
    REQUIRE_THROWS(qsc::loglog_slope({0.1}, {0.2}));
}

TEST_CASE("refinement studies show first-order convergence", "[qsc]") {
    const Setup s = small_setup(2, 0.3);
    qsc::IntegralFamily family(s.grid, 1);
    const auto inner = ito::StrengthFunction::constant(s.grid, ito::ItoMatrix::creation(scalar(0.8)));
    const std::size_t it = family.add_integral(qsc::IntegralFamily::kIdentity, inner);
    const auto n = random_strength(s.grid, 13, 0.8);
    const auto first = qsc::first_formula_refinement(family, it, n, s.f, s.g, 3, 4);
    REQUIRE(first.rows.size() == 5);
    REQUIRE(first.slope_three_term == Catch::Approx(1.0).margin(0.15));
    for (std::size_t i = 1; i < first.rows.size(); ++i) {
        REQUIRE(first.rows[i].n_slots == 2 * first.rows[i - 1].n_slots);
    }
    const auto second = qsc::second_formula_refinement(family, it, n, it, n, s.f, s.g, 3, 4);
    REQUIRE(second.slope_three_term == Catch::Approx(1.0).margin(0.15));
}
