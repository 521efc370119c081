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
#include "qsb/random.hpp"

#include <catch_amalgamated.hpp>

using namespace qsb;

TEST_CASE("random draws respect their constraints", "[checks][property]") {
    for (std::uint64_t i = 0; i < 200; ++i) {
        rng::CounterEngine engine(rng::derive(1, i));
        REQUIRE(checks::random_in_ball(engine, 3, 0.5).norm() <= 0.5 + 1e-15);
        const CVector v = checks::random_vector(engine, 3, 0.7);
        REQUIRE(v.cwiseAbs().maxCoeff() <= 0.7 * std::sqrt(2.0));
        REQUIRE(numerics::hermitian_defect(checks::random_hermitian(engine, 3, 1.0)) < 1e-15);
        REQUIRE(numerics::unitary_defect(checks::random_unitary(engine, 3)) < 1e-12);
        checks::random_ito(engine, 2, 1.0).validate();
    }
}

TEST_CASE("residual set helpers", "[checks]") {
    const checks::ResidualSet a = {{"x", 1.0}, {"y", 3.0}};
    const checks::ResidualSet b = {{"x", 2.0}, {"y", 0.5}};
    REQUIRE(checks::max_value(a) == 3.0);
    const auto m = checks::merge_max(a, b);
    REQUIRE(m.size() == 2);
    REQUIRE(m[0].value == 2.0);
    REQUIRE(m[1].value == 3.0);
    REQUIRE(checks::merge_max({}, b)[0].value == 2.0);
}

TEST_CASE("ccr residuals are named and small", "[checks]") {
    const auto r = checks::ccr_suite(2, 7, 5, 1.0, 2);
    REQUIRE(r.size() == 6);
    REQUIRE(r[0].name == "a_a");
    REQUIRE(r[2].name == "a_adag");
    REQUIRE(r[5].name == "lambda_lambda");
    REQUIRE(checks::max_value(r) < 1e-10);
}

TEST_CASE("ccr residuals detect a wrong commutator", "[checks]") {
    // Without the guard the top sector of [a, a^dagger] is far from the identity.
    const auto basis = fock::make_basis(1, 4);
    CVector u(1);
    u << 1.0;
    const CMatrix a = fock::annihilation(basis, u).matrix;
    const CMatrix c = numerics::commutator(a, a.adjoint()) - CMatrix::Identity(5, 5);
    REQUIRE(numerics::max_abs(c) > 1.0);
    const auto r = checks::ccr_residuals(basis, u, u, CMatrix::Identity(1, 1), CMatrix::Identity(1, 1));
    REQUIRE(checks::max_value(r) < 1e-12);
}

TEST_CASE("exponential vector checks", "[checks]") {
    const auto basis = fock::make_basis(2, 16);
    CVector u(2);
    CVector v(2);
    u << 0.3, Complex(0.0, 0.2);
    v << -0.1, 0.4;
    REQUIRE(checks::inner_product_error(basis, u, v) < 1e-12);
    REQUIRE(checks::eigenrelation_residual(basis, u, v) < 1e-12);
    REQUIRE(checks::weyl_action_residual(basis, u) < 1e-10);
    const auto coarse = fock::make_basis(2, 4);
    REQUIRE(checks::weyl_action_residual(coarse, u) > checks::weyl_action_residual(basis, u));
}

TEST_CASE("probe vectors and probe residuals", "[checks]") {
    const auto probes = checks::probe_vectors(2, 0.5, 8, 3);
    REQUIRE(probes.size() == 8);
    REQUIRE(probes[0].norm() == 0.0);
    for (const auto& p : probes) REQUIRE(p.norm() <= 0.5 + 1e-15);
    REQUIRE(checks::probe_vectors(2, 0.5, 8, 3)[5] == probes[5]);

    const auto basis = fock::make_basis(2, 6);
    const auto id = fock::identity(basis);
    REQUIRE(checks::probe_residual(id, id, probes) == 0.0);
    const auto twice = Complex(2.0) * id;
    double largest = 0.0;
    for (const auto& p : probes) largest = std::max(largest, fock::exponential_vector(basis, p).coeffs.norm());
    REQUIRE(checks::probe_residual(twice, id, probes) == Catch::Approx(largest));
}

TEST_CASE("Weyl relation residuals are small and named", "[checks]") {
    const auto basis = fock::make_basis(1, 16);
    const auto probes = checks::probe_vectors(1, 0.5, 5, 4);
    CVector u1(1);
    CVector u2(1);
    u1 << Complex(0.2, 0.1);
    u2 << Complex(-0.1, 0.3);
    CMatrix v1(1, 1);
    CMatrix v2(1, 1);
    v1 << std::polar(1.0, 0.4);
    v2 << std::polar(1.0, -1.1);
    const auto r = checks::weyl_relation_residuals(basis, u1, u2, v1, v2, probes);
    REQUIRE(r.size() == 4);
    REQUIRE(r[0].name == "product");
    REQUIRE(checks::max_value(r) < 1e-8);
}

TEST_CASE("Ito algebra residuals are small", "[checks]") {
    const auto r = checks::ito_algebra_residuals(2, 20, 1.0, 5);
    REQUIRE(r.size() == 4);
    REQUIRE(checks::max_value(r) < 1e-12);
}
