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
#include "qsb/ito_algebra.hpp"
#include "qsb/random.hpp"

#include <catch_amalgamated.hpp>

using namespace qsb;
using ito::ItoMatrix;

namespace {

CVector vec(std::initializer_list<Complex> xs) {
    CVector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (Complex x : xs) v(i++) = x;
    return v;
}

CMatrix one() { return CMatrix::Identity(1, 1); }

Complex nu_oracle(const ItoMatrix& n, const CVector& f, const CVector& g) {
    CVector lf(f.size() + 1);
    CVector lg(g.size() + 1);
    lf << 1.0, f;
    lg << 1.0, g;
    return lf.dot(n.block() * lg);
}

}  // namespace

TEST_CASE("circ drops the input alphas", "[ito]") {
    const ItoMatrix t7 = ItoMatrix::time(7.0, 2);
    rng::CounterEngine engine(1);
    const ItoMatrix n = checks::random_ito(engine, 2, 1.0);
    REQUIRE(ito::max_abs_difference(ito::circ(t7, n), ItoMatrix::zero(2)) == 0.0);
    REQUIRE(ito::max_abs_difference(ito::circ(n, t7), ItoMatrix::zero(2)) == 0.0);
}

TEST_CASE("circ of an annihilation and a creation is a time strength", "[ito]") {
    const CVector b = vec({Complex(1.0, 2.0), 0.5});
    const CVector k = vec({Complex(0.0, 1.0), -1.0});
    const ItoMatrix r = ito::circ(ItoMatrix::annihilation(b), ItoMatrix::creation(k));
    REQUIRE(std::abs(r.alpha - b.dot(k)) < 1e-15);
    REQUIRE(r.bra.norm() == 0.0);
    REQUIRE(r.ket.norm() == 0.0);
    REQUIRE(r.op.norm() == 0.0);
}

TEST_CASE("circ agrees with the block sandwich product", "[ito][property]") {
    for (std::uint64_t i = 0; i < 200; ++i) {
        rng::CounterEngine engine(rng::derive(2, i));
        const int d = 1 + static_cast<int>(i % 3);
        const ItoMatrix a = checks::random_ito(engine, d, 1.0);
        const ItoMatrix b = checks::random_ito(engine, d, 1.0);
        CMatrix mid = CMatrix::Identity(d + 1, d + 1);
        mid(0, 0) = 0.0;
        const ItoMatrix expected = ItoMatrix::from_block(a.block() * mid * b.block());
        REQUIRE(ito::max_abs_difference(ito::circ(a, b), expected) < 1e-13);
        REQUIRE(ito::max_abs_difference(ito::circ_by_blocks(a, b), expected) < 1e-13);
    }
}

TEST_CASE("dagger is the block adjoint and an involution", "[ito][property]") {
    for (std::uint64_t i = 0; i < 100; ++i) {
        rng::CounterEngine engine(rng::derive(3, i));
        const ItoMatrix a = checks::random_ito(engine, 2, 1.0);
        REQUIRE(ito::max_abs_difference(ito::dagger(a), ItoMatrix::from_block(a.block().adjoint())) < 1e-15);
        REQUIRE(ito::max_abs_difference(ito::dagger(ito::dagger(a)), a) == 0.0);
    }
}

TEST_CASE("block round trip", "[ito]") {
    rng::CounterEngine engine(4);
    const ItoMatrix a = checks::random_ito(engine, 3, 1.0);
    REQUIRE(ito::max_abs_difference(ItoMatrix::from_block(a.block()), a) == 0.0);
    REQUIRE(a.block().rows() == 4);
}

TEST_CASE("nu examples", "[ito]") {
    const CVector f = vec({Complex(0.2, 0.1)});
    const CVector g = vec({Complex(-0.3, 0.4)});
    REQUIRE(std::abs(ito::nu(ItoMatrix::time(2.5, 1), f, g) - 2.5) < 1e-15);
    REQUIRE(std::abs(ito::nu(ItoMatrix::creation(vec({1.0})), f, g) - std::conj(f(0))) < 1e-15);
    REQUIRE(std::abs(ito::nu(ItoMatrix::annihilation(vec({1.0})), f, g) - g(0)) < 1e-15);
    REQUIRE(std::abs(ito::nu(ItoMatrix::conservation(one()), f, g) - std::conj(f(0)) * g(0)) < 1e-15);
}

TEST_CASE("nu matches the bordered quadratic form", "[ito][property]") {
    for (std::uint64_t i = 0; i < 100; ++i) {
        rng::CounterEngine engine(rng::derive(5, i));
        const ItoMatrix n = checks::random_ito(engine, 3, 1.0);
        const CVector f = checks::random_vector(engine, 3, 1.0);
        const CVector g = checks::random_vector(engine, 3, 1.0);
        REQUIRE(std::abs(ito::nu(n, f, g) - nu_oracle(n, f, g)) < 1e-13);
        REQUIRE(std::abs(ito::nu(ito::dagger(n), g, f) - std::conj(ito::nu(n, f, g))) < 1e-13);
    }
}

TEST_CASE("nu_integral on step data", "[ito]") {
    const GridPtr grid = make_grid(TimeGrid({0.0, 0.25, 1.0}));
    rng::CounterEngine engine(6);
    const ItoMatrix a = checks::random_ito(engine, 2, 1.0);
    const ItoMatrix b = checks::random_ito(engine, 2, 1.0);
    const CVector f0 = checks::random_vector(engine, 2, 1.0);
    const CVector f1 = checks::random_vector(engine, 2, 1.0);
    const CVector g0 = checks::random_vector(engine, 2, 1.0);
    const CVector g1 = checks::random_vector(engine, 2, 1.0);
    const StepFunction f(grid, {f0, f1});
    const StepFunction g(grid, {g0, g1});

    const ito::StrengthFunction constant = ito::StrengthFunction::constant(grid, a);
    REQUIRE(ito::nu_integral(constant, f, g, 0.0) == Complex(0.0));

    const ito::StrengthFunction two(grid, {a, b});
    const Complex expected = 0.25 * nu_oracle(a, f0, g0) + 0.75 * nu_oracle(b, f1, g1);
    REQUIRE(std::abs(ito::nu_integral(two, f, g, 1.0) - expected) < 1e-13);
    REQUIRE(std::abs(ito::nu_integral(two, f, g, 0.25) - 0.25 * nu_oracle(a, f0, g0)) < 1e-13);
    REQUIRE_THROWS(ito::nu_integral(two, f, g, 0.5));

    const StepFunction cf = StepFunction::constant(grid, f0);
    const StepFunction cg = StepFunction::constant(grid, g0);
    REQUIRE(std::abs(ito::nu_integral(constant, cf, cg, 1.0) - nu_oracle(a, f0, g0)) < 1e-13);
}

TEST_CASE("product table for one mode", "[ito]") {
    const ItoMatrix da_dag = ItoMatrix::creation(vec({1.0}));
    const ItoMatrix dlambda = ItoMatrix::conservation(one());
    const ItoMatrix da = ItoMatrix::annihilation(vec({1.0}));
    const ItoMatrix dt = ItoMatrix::time(1.0, 1);
    const ItoMatrix zero = ItoMatrix::zero(1);
    const ItoMatrix all[] = {da_dag, dlambda, da, dt};
    // Rows are the left factor in the order dA^dagger, dLambda, dA, dt.
    const ItoMatrix table[4][4] = {
        {zero, zero, zero, zero},
        {da_dag, dlambda, zero, zero},
        {dt, da, zero, zero},
        {zero, zero, zero, zero},
    };
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            INFO("row " << r << " col " << c);
            REQUIRE(ito::max_abs_difference(ito::ito_product_table(all[r], all[c]), table[r][c]) == 0.0);
        }
    }
}

TEST_CASE("circ is bilinear", "[ito][property]") {
    for (std::uint64_t i = 0; i < 50; ++i) {
        rng::CounterEngine engine(rng::derive(7, i));
        const ItoMatrix a = checks::random_ito(engine, 2, 1.0);
        const ItoMatrix b = checks::random_ito(engine, 2, 1.0);
        const ItoMatrix c = checks::random_ito(engine, 2, 1.0);
        const Complex s(engine.normal(), engine.normal());
        REQUIRE(ito::max_abs_difference(ito::circ(s * a + b, c), s * ito::circ(a, c) + ito::circ(b, c)) < 1e-13);
        REQUIRE(ito::max_abs_difference(ito::circ(c, s * a + b), s * ito::circ(c, a) + ito::circ(c, b)) < 1e-13);
    }
}

TEST_CASE("algebra residual suite", "[ito][property]") {
    for (const auto& r : checks::ito_algebra_residuals(3, 50, 1.0, 8)) {
        INFO(r.name);
        REQUIRE(r.value < 1e-12);
    }
}

TEST_CASE("validate rejects mismatched blocks", "[ito]") {
    ItoMatrix n = ItoMatrix::zero(2);
    n.ket = CVector::Zero(3);
    REQUIRE_THROWS_AS(n.validate(), std::invalid_argument);
}
