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

// checks.hpp: residual measurements for the algebraic identities of the Fock
// and Ito layers, plus seeded random draws of their arguments.

#pragma once

#include "qsb/fock.hpp"
#include "qsb/ito_algebra.hpp"
#include "qsb/random.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qsb::checks {

struct NamedResidual {
    std::string name;
    double value = 0.0;
};

using ResidualSet = std::vector<NamedResidual>;

double max_value(const ResidualSet& set);
/// Entry-wise maximum of two sets with the same names in the same order.
ResidualSet merge_max(const ResidualSet& a, const ResidualSet& b);

/// Uniform direction, radius uniform in [0, radius].
CVector random_in_ball(rng::CounterEngine& engine, int modes, double radius);
/// Real and imaginary parts uniform in [-scale, scale].
CVector random_vector(rng::CounterEngine& engine, int modes, double scale);
CMatrix random_matrix(rng::CounterEngine& engine, int modes, double scale);
CMatrix random_hermitian(rng::CounterEngine& engine, int modes, double scale);
/// exp(iH) with H a random Hermitian matrix of the given scale.
CMatrix random_unitary(rng::CounterEngine& engine, int modes, double scale = 1.0);
ito::ItoMatrix random_ito(rng::CounterEngine& engine, int modes, double scale);

/// The six commutation relations restricted to sectors <= cutoff - 2:
/// [a(u), a(v)], [a^dagger(u), a^dagger(v)], [a(u), a^dagger(v)] - <u|v>,
/// [a(u), lambda(K1)] - a(K1^dagger u), [lambda(K1), a^dagger(v)] - a^dagger(K1 v),
/// [lambda(K1), lambda(K2)] - lambda([K1, K2]).
ResidualSet ccr_residuals(const fock::BasisPtr& basis, const CVector& u, const CVector& v,
                          const CMatrix& k1, const CMatrix& k2);

/// Maximum of ccr_residuals over `draws` random arguments (vectors and
/// matrices with entries of modulus <= scale).
ResidualSet ccr_suite(int modes, int cutoff, std::size_t draws, double scale, std::uint64_t seed);

/// |<e(u)|e(v)> - exp(<u|v>)| / |exp(<u|v>)|.
double inner_product_error(const fock::BasisPtr& basis, const CVector& u, const CVector& v);

/// max |a(u) e(v) - <u|v> e(v)| on sectors <= cutoff - 1.
double eigenrelation_residual(const fock::BasisPtr& basis, const CVector& u, const CVector& v);

/// max |W(u) e(0) - exp(-|u|^2 / 2) e(u)|.
double weyl_action_residual(const fock::BasisPtr& basis, const CVector& u);

/// e(0) followed by count - 1 random vectors with norm <= radius.
std::vector<CVector> probe_vectors(int modes, double radius, std::size_t count, std::uint64_t seed);

/// max over probes v of |(A - B) e(v)|.
double probe_residual(const fock::FockOperator& a, const fock::FockOperator& b,
                      const std::vector<CVector>& probes);

/// Weyl relations on probe vectors: product law, commutation law, covariance
/// Gamma(U) W(u) Gamma(U)^-1 = W(Uu), and the euclidean-group product law.
ResidualSet weyl_relation_residuals(const fock::BasisPtr& basis, const CVector& u1,
                                    const CVector& u2, const CMatrix& unitary1,
                                    const CMatrix& unitary2, const std::vector<CVector>& probes);

/// Ito algebra identities over random triples: associativity of o,
/// (A o B)^dagger = B^dagger o A^dagger, o against the block sandwich product,
/// and nu_{N^dagger}(f, g) = conj(nu_N(g, f)).
ResidualSet ito_algebra_residuals(int modes, std::size_t triples, double scale,
                                  std::uint64_t seed);

}  // namespace qsb::checks
