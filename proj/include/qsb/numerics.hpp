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

// numerics.hpp: small dense complex-matrix kernels shared by every module.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>

namespace qsb {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Central tolerance record. Every suite reads its thresholds from here so
/// truncation-sensitive checks can be tightened or relaxed in one place.
struct Tolerances {
    double algebraic = 1e-10;    // algebraic identities (CCR, Ito algebra, ...)
    double exponential = 1e-9;   // exponential / unitary checks
    double hermitian = 1e-10;    // max |M - M^dagger| accepted as Hermitian
    double unitary = 1e-10;      // max |U U^dagger - I| accepted as unitary
    double contraction = 1e-12;  // slack on the largest singular value
};

const Tolerances& default_tolerances();

namespace numerics {

struct EigenDecomposition {
    RVector values;   // ascending
    CMatrix vectors;  // columns; first non-negligible component real-positive
};

/// Eigendecomposition of a Hermitian matrix, M = V diag(values) V^dagger.
/// Throws std::invalid_argument when max |M - M^dagger| exceeds `tol`.
EigenDecomposition hermitian_eig(const CMatrix& m, double tol = default_tolerances().hermitian);

/// Matrix exponential (scaling and squaring with a Pade approximant).
CMatrix mat_exp(const CMatrix& m);

CMatrix commutator(const CMatrix& a, const CMatrix& b);

/// f(H) for Hermitian H through its spectral decomposition.
template <typename F>
CMatrix spectral_function(const CMatrix& h, F&& f) {
    const auto eig = hermitian_eig(h);
    CVector fx(eig.values.size());
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) fx(k) = f(eig.values(k));
    return eig.vectors * fx.asDiagonal() * eig.vectors.adjoint();
}

/// Principal logarithm of a unitary matrix (eigenphases in (-pi, pi]).
CMatrix unitary_log(const CMatrix& u, double tol = default_tolerances().unitary);

double max_abs(const CMatrix& m);
double max_abs(const CVector& v);
double hermitian_defect(const CMatrix& m);
double unitary_defect(const CMatrix& m);
double largest_singular_value(const CMatrix& m);
bool all_finite(const CMatrix& m);

void require_square(const CMatrix& m, const char* what);
void require_same_shape(const CMatrix& a, const CMatrix& b, const char* what);

}  // namespace numerics
}  // namespace qsb
