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
#include "qsb/fock.hpp"
#include "qsb/random.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace qsb;
using numerics::max_abs;

namespace {

CVector vec(std::initializer_list<Complex> xs) {
    CVector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (Complex x : xs) v(i++) = x;
    return v;
}

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

TEST_CASE("basis dimension matches the binomial count", "[fock]") {
    for (int d = 1; d <= 4; ++d) {
        for (int n = 0; n <= 8; ++n) {
            const fock::FockBasis b(d, n);
            double expected = 0.0;
            for (int k = 0; k <= n; ++k) expected += binomial(d + k - 1, k);
            REQUIRE(static_cast<double>(b.dim()) == expected);
            REQUIRE(b.dim() == fock::FockBasis::expected_dim(d, n));
        }
    }
}

TEST_CASE("basis order: vacuum first, sectors ascending, one-particle modes in order", "[fock]") {
    const fock::FockBasis b(3, 3);
    REQUIRE(b.state(0) == fock::Occupation{0, 0, 0});
    REQUIRE(b.state(1) == fock::Occupation{1, 0, 0});
    REQUIRE(b.state(2) == fock::Occupation{0, 1, 0});
    REQUIRE(b.state(3) == fock::Occupation{0, 0, 1});
    for (std::size_t i = 1; i < b.dim(); ++i) {
        REQUIRE(b.particle_number(i - 1) <= b.particle_number(i));
        if (b.particle_number(i - 1) == b.particle_number(i)) REQUIRE(b.state(i - 1) > b.state(i));
        REQUIRE(b.index_of(b.state(i)) == static_cast<long>(i));
    }
    const int outside[] = {2, 2, 0};
    REQUIRE(b.index_of(outside) == -1);
}

TEST_CASE("exponential vector coefficients", "[fock]") {
    const auto b = fock::make_basis(1, 3);
    const auto e0 = fock::exponential_vector(b, vec({0.0}));
    REQUIRE(max_abs(CVector(e0.coeffs - fock::vacuum(b).coeffs)) == 0.0);
    const auto e1 = fock::exponential_vector(b, vec({1.0}));
    REQUIRE(e1.coeffs(0).real() == Catch::Approx(1.0));
    REQUIRE(e1.coeffs(1).real() == Catch::Approx(1.0));
    REQUIRE(e1.coeffs(2).real() == Catch::Approx(1.0 / std::sqrt(2.0)));
    REQUIRE(e1.coeffs(3).real() == Catch::Approx(1.0 / std::sqrt(6.0)));
}

TEST_CASE("exponential vector inner products", "[fock]") {
    const auto b1 = fock::make_basis(1, 20);
    const Complex ee = fock::inner(fock::exponential_vector(b1, vec({1.0})), fock::exponential_vector(b1, vec({1.0})));
    REQUIRE(std::abs(ee - std::exp(1.0)) / std::exp(1.0) < 1e-12);

    const Complex z = fock::inner(fock::exponential_vector(b1, vec({0.5})),
                                  fock::exponential_vector(b1, vec({Complex(0.3, 0.4)})));
    REQUIRE(std::abs(z - std::exp(0.5 * Complex(0.3, 0.4))) < 1e-10);

    const auto b2 = fock::make_basis(2, 8);
    const Complex orth =
        fock::inner(fock::exponential_vector(b2, vec({1.0, 0.0})), fock::exponential_vector(b2, vec({0.0, 1.0})));
    REQUIRE(std::abs(orth - 1.0) < 1e-15);

    const auto vac = fock::vacuum(b2);
    REQUIRE(fock::inner(vac, vac) == Complex(1.0));
}

TEST_CASE("inner is antilinear in the first argument", "[fock]") {
    const auto b = fock::make_basis(2, 5);
    rng::CounterEngine engine(1);
    const fock::FockVector x{b, checks::random_vector(engine, static_cast<int>(b->dim()), 1.0)};
    const fock::FockVector y{b, checks::random_vector(engine, static_cast<int>(b->dim()), 1.0)};
    const Complex s(0.3, -1.2);
    const fock::FockVector sx{b, s * x.coeffs};
    REQUIRE(std::abs(fock::inner(sx, y) - std::conj(s) * fock::inner(x, y)) < 1e-13);
}

TEST_CASE("inner rejects vectors on different bases", "[fock]") {
    REQUIRE_THROWS_AS(fock::inner(fock::vacuum(fock::make_basis(1, 3)), fock::vacuum(fock::make_basis(1, 4))),
                      std::invalid_argument);
}

TEST_CASE("annihilation kills the vacuum and lowers one particle", "[fock]") {
    const auto b = fock::make_basis(2, 4);
    rng::CounterEngine engine(2);
    const CVector u = checks::random_vector(engine, 2, 1.0);
    REQUIRE(max_abs(CVector(fock::annihilation(b, u).matrix * fock::vacuum(b).coeffs)) == 0.0);

    const auto b1 = fock::make_basis(1, 4);
    CVector one = CVector::Zero(static_cast<Eigen::Index>(b1->dim()));
    one(1) = 1.0;
    const CVector out = fock::annihilation(b1, vec({1.0})).matrix * one;
    REQUIRE(out(0) == Complex(1.0));
    REQUIRE(max_abs(CVector(out.tail(out.size() - 1))) == 0.0);
}

TEST_CASE("annihilation is antilinear, creation linear, and they are adjoint", "[fock]") {
    const auto b = fock::make_basis(2, 6);
    rng::CounterEngine engine(3);
    const CVector u = checks::random_vector(engine, 2, 1.0);
    const Complex s(0.2, 0.9);
    REQUIRE(max_abs(CMatrix(fock::annihilation(b, s * u).matrix - std::conj(s) * fock::annihilation(b, u).matrix)) <
            1e-14);
    REQUIRE(max_abs(CMatrix(fock::creation(b, s * u).matrix - s * fock::creation(b, u).matrix)) < 1e-14);
    REQUIRE(max_abs(CMatrix(fock::creation(b, u).matrix - fock::annihilation(b, u).matrix.adjoint())) == 0.0);
}

TEST_CASE("exponential vectors are eigenvectors of annihilation below the cutoff", "[fock][property]") {
    const auto b = fock::make_basis(2, 10);
    for (std::uint64_t i = 0; i < 20; ++i) {
        rng::CounterEngine engine(rng::derive(4, i));
        const CVector u = checks::random_in_ball(engine, 2, 1.0);
        const CVector v = checks::random_in_ball(engine, 2, 1.0);
        REQUIRE(checks::eigenrelation_residual(b, u, v) < 1e-10);
    }
}

TEST_CASE("conservation operator basics", "[fock]") {
    const auto b = fock::make_basis(2, 5);
    REQUIRE(max_abs(fock::conservation(b, CMatrix::Zero(2, 2)).matrix) == 0.0);

    const CMatrix number = fock::conservation(b, CMatrix::Identity(2, 2)).matrix;
    CMatrix expected = CMatrix::Zero(number.rows(), number.cols());
    for (std::size_t i = 0; i < b->dim(); ++i) expected(i, i) = b->particle_number(i);
    REQUIRE(max_abs(CMatrix(number - expected)) < 1e-14);

    rng::CounterEngine engine(5);
    const CMatrix h1 = checks::random_hermitian(engine, 2, 1.0);
    const CMatrix h2 = checks::random_hermitian(engine, 2, 1.0);
    const double alpha = 0.7;
    const double beta = -1.3;
    const CMatrix lin = fock::conservation(b, alpha * h1 + beta * h2).matrix;
    REQUIRE(max_abs(CMatrix(lin - alpha * fock::conservation(b, h1).matrix - beta * fock::conservation(b, h2).matrix)) <
            1e-12);

    const CMatrix k = checks::random_matrix(engine, 2, 1.0);
    REQUIRE(max_abs(CMatrix(fock::conservation(b, k).matrix.adjoint() - fock::conservation(b, k.adjoint()).matrix)) <
            1e-14);
}

TEST_CASE("conservation preserves particle-number sectors", "[fock]") {
    const auto b = fock::make_basis(3, 4);
    rng::CounterEngine engine(6);
    const CMatrix m = fock::conservation(b, checks::random_matrix(engine, 3, 1.0)).matrix;
    for (std::size_t r = 0; r < b->dim(); ++r) {
        for (std::size_t c = 0; c < b->dim(); ++c) {
            if (b->particle_number(r) != b->particle_number(c)) REQUIRE(m(r, c) == Complex(0.0));
        }
    }
}

TEST_CASE("second quantization of contractions", "[fock]") {
    const auto b = fock::make_basis(2, 8);
    REQUIRE(max_abs(CMatrix(fock::second_quantization(b, CMatrix::Identity(2, 2)).matrix -
                            CMatrix::Identity(b->dim(), b->dim()))) < 1e-14);

    rng::CounterEngine engine(7);
    const CMatrix u = checks::random_unitary(engine, 2);
    const CVector v = checks::random_in_ball(engine, 2, 1.0);
    const CVector lhs = fock::second_quantization(b, u).matrix * fock::exponential_vector(b, v).coeffs;
    REQUIRE(max_abs(CVector(lhs - fock::exponential_vector(b, u * v).coeffs)) < 1e-10);

    const CMatrix t1 = 0.5 * checks::random_unitary(engine, 2);
    const CMatrix t2 = 0.8 * checks::random_unitary(engine, 2);
    const CMatrix g12 = fock::second_quantization(b, t1 * t2).matrix;
    REQUIRE(max_abs(CMatrix(g12 - fock::second_quantization(b, t1).matrix * fock::second_quantization(b, t2).matrix)) <
            1e-12);
    REQUIRE(max_abs(CMatrix(fock::second_quantization(b, t1.adjoint()).matrix -
                            fock::second_quantization(b, t1).matrix.adjoint())) < 1e-12);

    REQUIRE_THROWS_AS(fock::second_quantization(b, 1.5 * CMatrix::Identity(2, 2)), std::invalid_argument);
}

TEST_CASE("second quantization of a unitary group is generated by lambda", "[fock]") {
    const auto b = fock::make_basis(2, 6);
    rng::CounterEngine engine(8);
    const CMatrix h = checks::random_hermitian(engine, 2, 1.0);
    const double t = 0.7;
    const CMatrix lhs = fock::second_quantization(b, numerics::mat_exp(-kI * t * h)).matrix;
    const CMatrix rhs = numerics::mat_exp(-kI * t * fock::conservation(b, h).matrix);
    REQUIRE(max_abs(CMatrix(lhs - rhs)) < 1e-9);
    REQUIRE(max_abs(CMatrix(fock::second_quantization_unitary(b, numerics::mat_exp(-kI * t * h)).matrix - lhs)) <
            1e-9);
}

TEST_CASE("momentum fields", "[fock]") {
    const auto b = fock::make_basis(2, 10);
    REQUIRE(max_abs(fock::momentum(b, CVector::Zero(2)).matrix) == 0.0);
    rng::CounterEngine engine(9);
    const CVector u = checks::random_vector(engine, 2, 1.0);
    REQUIRE(numerics::hermitian_defect(fock::momentum(b, u).matrix) < 1e-10);

    const CMatrix guard = fock::sector_projector(*b, b->cutoff() - 2);
    for (int r = 0; r < 2; ++r) {
        for (int s = 0; s < 2; ++s) {
            CVector er = CVector::Zero(2);
            CVector es = CVector::Zero(2);
            er(r) = 1.0;
            es(s) = 1.0;
            const CMatrix q = -0.5 * fock::momentum(b, kI * er).matrix;
            const CMatrix p = fock::momentum(b, es).matrix;
            const CMatrix expected = (r == s ? kI : Complex(0.0)) * CMatrix::Identity(b->dim(), b->dim());
            REQUIRE(max_abs(CMatrix((numerics::commutator(q, p) - expected) * guard)) < 1e-10);
        }
    }
}

TEST_CASE("vacuum characteristic function of a momentum field is Gaussian", "[fock]") {
    const auto b = fock::make_basis(1, 14);
    const CVector u = vec({Complex(0.6, 0.2)});
    const CMatrix p = fock::momentum(b, u).matrix;
    for (double t : {-0.5, 0.1, 0.3, 0.8}) {
        const Complex got = numerics::mat_exp(-kI * t * p)(0, 0);
        REQUIRE(std::abs(got - std::exp(-0.5 * t * t * u.squaredNorm())) < 1e-8);
    }
}

TEST_CASE("Weyl operators act on the vacuum by translation", "[fock]") {
    const auto b = fock::make_basis(1, 16);
    REQUIRE(max_abs(CMatrix(fock::weyl(b, vec({0.0})).matrix - CMatrix::Identity(b->dim(), b->dim()))) < 1e-15);
    REQUIRE(checks::weyl_action_residual(b, vec({Complex(0.3, 0.4)})) < 1e-7);
}

TEST_CASE("Weyl operators are unitary on the low sectors", "[fock]") {
    const auto b = fock::make_basis(1, 12);
    const CMatrix w = fock::weyl(b, vec({Complex(0.5, -0.5)})).matrix;
    const CMatrix guard = fock::sector_projector(*b, 6);
    const CMatrix id = CMatrix::Identity(b->dim(), b->dim());
    REQUIRE(max_abs(CMatrix(guard * (w.adjoint() * w - id) * guard)) < 1e-6);
}

TEST_CASE("Weyl pair identities", "[fock]") {
    const auto b = fock::make_basis(2, 12);
    REQUIRE(max_abs(CMatrix(fock::weyl_pair(b, CVector::Zero(2), CMatrix::Identity(2, 2)).matrix -
                            CMatrix::Identity(b->dim(), b->dim()))) < 1e-14);
    REQUIRE_THROWS_AS(fock::weyl_pair(b, CVector::Zero(2), 0.5 * CMatrix::Identity(2, 2)), std::invalid_argument);

    rng::CounterEngine engine(10);
    const auto probes = checks::probe_vectors(2, 0.5, 6, 77);
    for (int trial = 0; trial < 3; ++trial) {
        const CVector u1 = checks::random_in_ball(engine, 2, 0.3);
        const CVector u2 = checks::random_in_ball(engine, 2, 0.3);
        const CMatrix v1 = checks::random_unitary(engine, 2);
        const CMatrix v2 = checks::random_unitary(engine, 2);
        const auto r = checks::weyl_relation_residuals(b, u1, u2, v1, v2, probes);
        for (const auto& x : r) {
            INFO(x.name);
            REQUIRE(x.value < (x.name == "covariance" ? 1e-7 : 1e-6));
        }
    }
}

TEST_CASE("dilated conservation characteristic function", "[fock]") {
    const auto b = fock::make_basis(2, 14);
    CMatrix h = CMatrix::Zero(2, 2);
    h(0, 0) = 1.0;
    h(1, 1) = -2.0;
    const CVector u = vec({0.4, 0.3});
    REQUIRE(std::abs(fock::dilated_conservation_cf(b, u, h, 0.0) - 1.0) < 1e-12);
    REQUIRE(std::abs(fock::dilated_conservation_cf(b, CVector::Zero(2), h, 1.3) - 1.0) < 1e-12);
    for (double t : {-2.0, -0.7, 0.5, 1.0, 2.0}) {
        const Complex expected =
            std::exp(0.16 * (std::exp(kI * t * 1.0) - 1.0) + 0.09 * (std::exp(kI * t * -2.0) - 1.0));
        REQUIRE(std::abs(fock::dilated_conservation_cf(b, u, h, t) - expected) < 1e-6);
    }
    CMatrix bad = CMatrix::Zero(2, 2);
    bad(0, 1) = 1.0;
    REQUIRE_THROWS_AS(fock::dilated_conservation_cf(b, u, bad, 1.0), std::invalid_argument);
}

TEST_CASE("Gram matrix of distinct exponential vectors is nonsingular", "[fock][property]") {
    const auto b = fock::make_basis(2, 10);
    rng::CounterEngine engine(12);
    CMatrix vectors(b->dim(), 5);
    for (int i = 0; i < 5; ++i) {
        vectors.col(i) = fock::exponential_vector(b, checks::random_in_ball(engine, 2, 1.0)).coeffs;
    }
    const CMatrix gram = vectors.adjoint() * vectors;
    const Eigen::JacobiSVD<CMatrix> svd(gram);
    const double cond = svd.singularValues()(0) / svd.singularValues()(4);
    REQUIRE(std::isfinite(cond));
    REQUIRE(svd.singularValues()(4) > 1e-12);
}

TEST_CASE("CCR relations on the guarded subspace", "[fock][property]") {
    const auto r = checks::ccr_suite(2, 8, 20, 1.0, 13);
    for (const auto& x : r) {
        INFO(x.name);
        REQUIRE(x.value < 1e-10);
    }
}
