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

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qsb::checks {

using numerics::max_abs;

double max_value(const ResidualSet& set) {
    double m = 0.0;
    for (const auto& r : set) m = std::max(m, r.value);
    return m;
}

ResidualSet merge_max(const ResidualSet& a, const ResidualSet& b) {
    if (a.empty()) return b;
    if (a.size() != b.size()) throw std::invalid_argument("merge_max: residual sets differ");
    ResidualSet out = a;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].name != b[i].name) throw std::invalid_argument("merge_max: residual names differ");
        out[i].value = std::max(a[i].value, b[i].value);
    }
    return out;
}

CVector random_in_ball(rng::CounterEngine& engine, int modes, double radius) {
    CVector v(modes);
    for (int k = 0; k < modes; ++k) v(k) = Complex(engine.normal(), engine.normal());
    const double n = v.norm();
    if (n == 0.0) return CVector::Zero(modes);
    return v * (radius * engine.uniform() / n);
}

CVector random_vector(rng::CounterEngine& engine, int modes, double scale) {
    CVector v(modes);
    for (int k = 0; k < modes; ++k) {
        v(k) = Complex(scale * (2.0 * engine.uniform() - 1.0), scale * (2.0 * engine.uniform() - 1.0));
    }
    return v;
}

CMatrix random_matrix(rng::CounterEngine& engine, int modes, double scale) {
    CMatrix m(modes, modes);
    for (int c = 0; c < modes; ++c) {
        for (int r = 0; r < modes; ++r) {
            m(r, c) = Complex(scale * (2.0 * engine.uniform() - 1.0),
                              scale * (2.0 * engine.uniform() - 1.0));
        }
    }
    return m;
}

CMatrix random_hermitian(rng::CounterEngine& engine, int modes, double scale) {
    const CMatrix m = random_matrix(engine, modes, scale);
    return 0.5 * (m + m.adjoint());
}

CMatrix random_unitary(rng::CounterEngine& engine, int modes, double scale) {
    return numerics::mat_exp(kI * random_hermitian(engine, modes, scale));
}

ito::ItoMatrix random_ito(rng::CounterEngine& engine, int modes, double scale) {
    ito::ItoMatrix n;
    n.alpha = random_vector(engine, 1, scale)(0);
    n.bra = random_vector(engine, modes, scale);
    n.ket = random_vector(engine, modes, scale);
    n.op = random_matrix(engine, modes, scale);
    return n;
}

ResidualSet ccr_residuals(const fock::BasisPtr& basis, const CVector& u, const CVector& v,
                          const CMatrix& k1, const CMatrix& k2) {
    if (basis->cutoff() < 2) throw std::invalid_argument("ccr_residuals: cutoff must be >= 2");
    const CMatrix p = fock::sector_projector(*basis, basis->cutoff() - 2);
    const CMatrix au = fock::annihilation(basis, u).matrix;
    const CMatrix av = fock::annihilation(basis, v).matrix;
    const CMatrix cu = fock::creation(basis, u).matrix;
    const CMatrix cv = fock::creation(basis, v).matrix;
    const CMatrix l1 = fock::conservation(basis, k1).matrix;
    const CMatrix l2 = fock::conservation(basis, k2).matrix;
    const auto id = CMatrix::Identity(au.rows(), au.cols());
    using numerics::commutator;
    return {
        {"a_a", max_abs(CMatrix(commutator(au, av) * p))},
        {"adag_adag", max_abs(CMatrix(commutator(cu, cv) * p))},
        {"a_adag", max_abs(CMatrix((commutator(au, cv) - u.dot(v) * id) * p))},
        {"a_lambda",
         max_abs(CMatrix((commutator(au, l1) - fock::annihilation(basis, k1.adjoint() * u).matrix) * p))},
        {"lambda_adag",
         max_abs(CMatrix((commutator(l1, cv) - fock::creation(basis, k1 * v).matrix) * p))},
        {"lambda_lambda",
         max_abs(CMatrix((commutator(l1, l2) - fock::conservation(basis, commutator(k1, k2)).matrix) * p))},
    };
}

ResidualSet ccr_suite(int modes, int cutoff, std::size_t draws, double scale, std::uint64_t seed) {
    const fock::BasisPtr basis = fock::make_basis(modes, cutoff);
    ResidualSet worst;
    for (std::size_t i = 0; i < draws; ++i) {
        rng::CounterEngine engine(rng::derive(seed, i));
        const CVector u = random_vector(engine, modes, scale);
        const CVector v = random_vector(engine, modes, scale);
        const CMatrix k1 = random_matrix(engine, modes, scale);
        const CMatrix k2 = random_matrix(engine, modes, scale);
        worst = merge_max(worst, ccr_residuals(basis, u, v, k1, k2));
    }
    return worst;
}

double inner_product_error(const fock::BasisPtr& basis, const CVector& u, const CVector& v) {
    const Complex exact = std::exp(u.dot(v));
    const Complex got = fock::inner(fock::exponential_vector(basis, u), fock::exponential_vector(basis, v));
    return std::abs(got - exact) / std::abs(exact);
}

double eigenrelation_residual(const fock::BasisPtr& basis, const CVector& u, const CVector& v) {
    const CMatrix p = fock::sector_projector(*basis, basis->cutoff() - 1);
    const CVector ev = fock::exponential_vector(basis, v).coeffs;
    const CVector lhs = fock::annihilation(basis, u).matrix * ev;
    return max_abs(CVector(p * (lhs - u.dot(v) * ev)));
}

double weyl_action_residual(const fock::BasisPtr& basis, const CVector& u) {
    const CVector lhs = fock::weyl(basis, u).matrix * fock::vacuum(basis).coeffs;
    const CVector rhs = std::exp(-0.5 * u.squaredNorm()) * fock::exponential_vector(basis, u).coeffs;
    return max_abs(CVector(lhs - rhs));
}

std::vector<CVector> probe_vectors(int modes, double radius, std::size_t count, std::uint64_t seed) {
    std::vector<CVector> out;
    if (count == 0) return out;
    out.push_back(CVector::Zero(modes));
    rng::CounterEngine engine(seed);
    for (std::size_t i = 1; i < count; ++i) out.push_back(random_in_ball(engine, modes, radius));
    return out;
}

double probe_residual(const fock::FockOperator& a, const fock::FockOperator& b,
                      const std::vector<CVector>& probes) {
    const CMatrix diff = a.matrix - b.matrix;
    double worst = 0.0;
    for (const CVector& v : probes) {
        const CVector e = fock::exponential_vector(a.basis, v).coeffs;
        worst = std::max(worst, CVector(diff * e).norm());
    }
    return worst;
}

ResidualSet weyl_relation_residuals(const fock::BasisPtr& basis, const CVector& u1,
                                    const CVector& u2, const CMatrix& unitary1,
                                    const CMatrix& unitary2, const std::vector<CVector>& probes) {
    const auto phase = [](Complex z) { return std::exp(-kI * z.imag()); };
    const fock::FockOperator w1 = fock::weyl(basis, u1);
    const fock::FockOperator w2 = fock::weyl(basis, u2);
    const fock::FockOperator w12 = fock::weyl(basis, u1 + u2);
    const fock::FockOperator g1 = fock::second_quantization(basis, unitary1);

    const Complex ip = u1.dot(u2);
    const fock::FockOperator product_rhs = phase(ip) * w12;
    const fock::FockOperator commutation_rhs = phase(2.0 * ip) * (w2 * w1);
    const fock::FockOperator covariance_lhs = g1 * w2 * g1.adjoint();
    const fock::FockOperator covariance_rhs = fock::weyl(basis, unitary1 * u2);

    const fock::FockOperator pair_lhs =
        fock::weyl_pair(basis, u1, unitary1) * fock::weyl_pair(basis, u2, unitary2);
    const fock::FockOperator pair_rhs =
        phase(u1.dot(unitary1 * u2)) * fock::weyl_pair(basis, u1 + unitary1 * u2, unitary1 * unitary2);

    return {
        {"product", probe_residual(w1 * w2, product_rhs, probes)},
        {"commutation", probe_residual(w1 * w2, commutation_rhs, probes)},
        {"covariance", probe_residual(covariance_lhs, covariance_rhs, probes)},
        {"pair_product", probe_residual(pair_lhs, pair_rhs, probes)},
    };
}

ResidualSet ito_algebra_residuals(int modes, std::size_t triples, double scale,
                                  std::uint64_t seed) {
    ResidualSet worst;
    for (std::size_t i = 0; i < triples; ++i) {
        rng::CounterEngine engine(rng::derive(seed, i));
        const ito::ItoMatrix a = random_ito(engine, modes, scale);
        const ito::ItoMatrix b = random_ito(engine, modes, scale);
        const ito::ItoMatrix c = random_ito(engine, modes, scale);
        const CVector f = random_vector(engine, modes, scale);
        const CVector g = random_vector(engine, modes, scale);
        const ResidualSet r = {
            {"associativity",
             ito::max_abs_difference(ito::circ(ito::circ(a, b), c), ito::circ(a, ito::circ(b, c)))},
            {"anti_multiplicativity",
             ito::max_abs_difference(ito::dagger(ito::circ(a, b)),
                                     ito::circ(ito::dagger(b), ito::dagger(a)))},
            {"sandwich", ito::max_abs_difference(ito::circ(a, b), ito::circ_by_blocks(a, b))},
            {"nu_adjoint", std::abs(ito::nu(ito::dagger(a), f, g) - std::conj(ito::nu(a, g, f)))},
        };
        worst = merge_max(worst, r);
    }
    return worst;
}

}  // namespace qsb::checks
