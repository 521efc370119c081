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
#include "qsb/slot_operator.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace qsb;
using numerics::max_abs;

namespace {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
        }
    }
    return out;
}

CMatrix embed_oracle(std::size_t slots, std::size_t dim, std::size_t slot, const CMatrix& m) {
    CMatrix out = CMatrix::Identity(1, 1);
    for (std::size_t j = 0; j < slots; ++j) {
        out = kron(out, j == slot ? m : CMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)));
    }
    return out;
}

}  // namespace

TEST_CASE("time grid basics", "[grid]") {
    const TimeGrid g = TimeGrid::uniform(2.0, 4);
    REQUIRE(g.slot_count() == 4);
    REQUIRE(g.horizon() == 2.0);
    REQUIRE(g.width(1) == Catch::Approx(0.5));
    REQUIRE(g.index_of(1.0) == 2);
    REQUIRE_FALSE(g.contains_point(0.7));
    REQUIRE_THROWS_AS(g.index_of(0.7), std::out_of_range);
    const TimeGrid fine = g.refine(3);
    REQUIRE(fine.slot_count() == 12);
    REQUIRE(fine.max_width() == Catch::Approx(0.5 / 3.0));
    REQUIRE_THROWS(TimeGrid({0.0, 0.5, 0.4}));
    REQUIRE_THROWS(TimeGrid({0.1, 0.5}));
}

TEST_CASE("step function norms and restriction", "[grid]") {
    const GridPtr grid = make_grid(TimeGrid({0.0, 0.25, 1.0}));
    CVector a(1);
    CVector b(1);
    a << Complex(1.0, 1.0);
    b << 2.0;
    const StepFunction f(grid, {a, b});
    REQUIRE(f.squared_norm() == Catch::Approx(0.25 * 2.0 + 0.75 * 4.0));
    REQUIRE(std::abs(l2_inner(f, f) - f.squared_norm()) < 1e-15);
    const StepFunction r = f.restricted(1, 2);
    REQUIRE(r.value(0).norm() == 0.0);
    REQUIRE(r.value(1)(0) == Complex(2.0));
    const StepFunction fine = f.refined(2, make_grid(grid->refine(2)));
    REQUIRE(std::abs(l2_inner(fine, fine) - f.squared_norm()) < 1e-14);
}

TEST_CASE("embedded exponential vectors", "[slot]") {
    const GridPtr grid = make_grid(TimeGrid::uniform(1.0, 2));
    const auto space = qsc::make_space(grid, 1, 8);
    const CVector zero = qsc::embed_exponential(*space, StepFunction::zero(grid, 1));
    REQUIRE(zero(0) == Complex(1.0));
    REQUIRE(zero.norm() == Catch::Approx(1.0));

    CVector u(1);
    CVector v(1);
    u << Complex(0.4, -0.2);
    v << Complex(0.1, 0.5);
    const StepFunction f(grid, {u, v});
    const StepFunction g(grid, {v, u});
    const Complex ip = qsc::embed_exponential(*space, f).dot(qsc::embed_exponential(*space, g));
    REQUIRE(std::abs(ip - std::exp(l2_inner(f, g))) < 1e-10);

    const GridPtr single = make_grid(TimeGrid::uniform(0.5, 1));
    const auto space1 = qsc::make_space(single, 1, 5);
    const StepFunction h = StepFunction::constant(single, u);
    const CVector expected = fock::exponential_vector(space1->slot_basis(), u * std::sqrt(0.5)).coeffs;
    REQUIRE(max_abs(CVector(qsc::embed_exponential(*space1, h) - expected)) < 1e-15);
}

TEST_CASE("apply_local agrees with the Kronecker embedding", "[slot][property]") {
    const GridPtr grid = make_grid(TimeGrid::uniform(1.0, 3));
    const auto space = qsc::make_space(grid, 1, 2);
    rng::CounterEngine engine(1);
    const auto dim = static_cast<Eigen::Index>(space->global_dim());
    const CVector v = checks::random_vector(engine, static_cast<int>(dim), 1.0);
    for (std::size_t slot = 0; slot < 3; ++slot) {
        const CMatrix m = checks::random_matrix(engine, 3, 1.0);
        const CMatrix oracle = embed_oracle(3, 3, slot, m);
        REQUIRE(max_abs(CVector(qsc::apply_local(*space, slot, m, v) - oracle * v)) < 1e-13);
        const auto op = qsc::GlobalOperator::local(space, slot, m);
        REQUIRE(max_abs(CMatrix(op.to_dense() - oracle)) < 1e-14);
        REQUIRE(max_abs(CMatrix(op.adjoint().to_dense() - oracle.adjoint())) < 1e-14);
        REQUIRE(op.support_begin() == slot);
        REQUIRE(op.support_end() == slot + 1);
    }
}

TEST_CASE("global operator arithmetic", "[slot]") {
    const GridPtr grid = make_grid(TimeGrid::uniform(1.0, 3));
    const auto space = qsc::make_space(grid, 1, 2);
    rng::CounterEngine engine(2);
    const CMatrix m0 = checks::random_matrix(engine, 3, 1.0);
    const CMatrix m2 = checks::random_matrix(engine, 3, 1.0);
    const auto a = qsc::GlobalOperator::local(space, 0, m0);
    const auto b = qsc::GlobalOperator::local(space, 2, m2);
    const CMatrix da = a.to_dense();
    const CMatrix db = b.to_dense();
    const Complex s(0.5, -2.0);
    REQUIRE(max_abs(CMatrix((a * b).to_dense() - da * db)) < 1e-13);
    REQUIRE(max_abs(CMatrix((a + b).to_dense() - (da + db))) < 1e-14);
    REQUIRE(max_abs(CMatrix((a - b).to_dense() - (da - db))) < 1e-14);
    REQUIRE(max_abs(CMatrix((s * a).to_dense() - s * da)) < 1e-14);
    REQUIRE(max_abs(CMatrix((a * b).to_dense() - (b * a).to_dense())) < 1e-13);
    const auto id = qsc::GlobalOperator::identity(space);
    REQUIRE(max_abs(CMatrix(id.to_dense() - CMatrix::Identity(27, 27))) == 0.0);
    REQUIRE(max_abs(qsc::GlobalOperator::zero(space).to_dense()) == 0.0);
    const auto dense = qsc::GlobalOperator::from_dense(space, da);
    REQUIRE(dense.is_dense());
    REQUIRE(max_abs(CMatrix((dense * b).to_dense() - da * db)) < 1e-13);
}

TEST_CASE("slot space dimension limit", "[slot]") {
    const GridPtr grid = make_grid(TimeGrid::uniform(1.0, 8));
    REQUIRE(qsc::make_space(grid, 1, 3, 65536)->global_dim() == 65536);
    REQUIRE_THROWS_AS(qsc::make_space(grid, 1, 3), qsc::DimensionLimitError);
    REQUIRE_THROWS_AS(qsc::make_space(grid, 2, 3, 1000), qsc::DimensionLimitError);
}

TEST_CASE("local increments", "[slot]") {
    const auto basis = fock::make_basis(2, 3);
    const auto dim = static_cast<Eigen::Index>(basis->dim());
    REQUIRE(max_abs(qsc::local_increment(basis, ito::ItoMatrix::zero(2), 0.3)) == 0.0);

    const CMatrix alpha_only = qsc::local_increment(basis, ito::ItoMatrix::time(Complex(2.0, 1.0), 2), 0.3);
    REQUIRE(max_abs(CMatrix(alpha_only - Complex(0.6, 0.3) * CMatrix::Identity(dim, dim))) < 1e-15);

    rng::CounterEngine engine(3);
    const ito::ItoMatrix n = checks::random_ito(engine, 2, 1.0);
    const double w = 0.25;
    const CMatrix inc = qsc::local_increment(basis, n, w);
    const CMatrix expected = n.alpha * w * CMatrix::Identity(dim, dim) +
                             fock::creation(basis, n.ket * std::sqrt(w)).matrix +
                             fock::conservation(basis, n.op).matrix +
                             fock::annihilation(basis, n.bra * std::sqrt(w)).matrix;
    REQUIRE(max_abs(CMatrix(inc - expected)) < 1e-14);
    REQUIRE(max_abs(CMatrix(qsc::local_increment(basis, ito::dagger(n), w) - inc.adjoint())) < 1e-14);
}

TEST_CASE("increment matrix elements match nu on exponential vectors", "[slot][property]") {
    const auto basis = fock::make_basis(1, 20);
    for (std::uint64_t i = 0; i < 10; ++i) {
        rng::CounterEngine engine(rng::derive(4, i));
        const ito::ItoMatrix n = checks::random_ito(engine, 1, 1.0);
        const CVector f = checks::random_in_ball(engine, 1, 1.0);
        const CVector g = checks::random_in_ball(engine, 1, 1.0);
        const double w = 0.5;
        const CVector ef = fock::exponential_vector(basis, f * std::sqrt(w)).coeffs;
        const CVector eg = fock::exponential_vector(basis, g * std::sqrt(w)).coeffs;
        const Complex lhs = ef.dot(qsc::local_increment(basis, n, w) * eg);
        const Complex rhs = ito::nu(n, f, g) * w * std::exp(w * f.dot(g));
        REQUIRE(std::abs(lhs - rhs) < 1e-10);
    }
}
