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

#include "qsb/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qsb {

const Tolerances& default_tolerances() {
    static const Tolerances tol{};
    return tol;
}

namespace numerics {

void require_square(const CMatrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        std::ostringstream os;
        os << what << ": expected a non-empty square matrix, got " << m.rows() << "x" << m.cols();
        throw std::invalid_argument(os.str());
    }
}

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        std::ostringstream os;
        os << what << ": shape mismatch " << a.rows() << "x" << a.cols() << " vs " << b.rows()
           << "x" << b.cols();
        throw std::invalid_argument(os.str());
    }
}

double max_abs(const CMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_abs(const CVector& v) {
    return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

double hermitian_defect(const CMatrix& m) {
    require_square(m, "hermitian_defect");
    return max_abs(CMatrix(m - m.adjoint()));
}

double unitary_defect(const CMatrix& m) {
    require_square(m, "unitary_defect");
    return max_abs(CMatrix(m * m.adjoint() - CMatrix::Identity(m.rows(), m.cols())));
}

double largest_singular_value(const CMatrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues()(0);
}

bool all_finite(const CMatrix& m) {
    return m.allFinite();
}

EigenDecomposition hermitian_eig(const CMatrix& m, double tol) {
    require_square(m, "hermitian_eig");
    const double defect = hermitian_defect(m);
    if (!(defect <= tol)) {
        std::ostringstream os;
        os << "hermitian_eig: matrix is not Hermitian, max |M - M^dagger| = " << defect
           << " exceeds tolerance " << tol;
        throw std::invalid_argument(os.str());
    }
    // Symmetrize so round-off in the input cannot leak into the solver.
    const CMatrix herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_eig: eigensolver did not converge");
    }
    EigenDecomposition out{solver.eigenvalues(), solver.eigenvectors()};

    // Phase convention: first component with |c| > threshold made real-positive.
    constexpr double threshold = 1e-12;
    for (Eigen::Index k = 0; k < out.vectors.cols(); ++k) {
        for (Eigen::Index r = 0; r < out.vectors.rows(); ++r) {
            const Complex c = out.vectors(r, k);
            if (std::abs(c) > threshold) {
                out.vectors.col(k) *= std::conj(c) / std::abs(c);
                out.vectors(r, k) = std::abs(c);
                break;
            }
        }
    }
    return out;
}

CMatrix mat_exp(const CMatrix& m) {
    require_square(m, "mat_exp");
    if (!m.allFinite()) throw std::invalid_argument("mat_exp: non-finite entries");
    return m.exp();
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) {
    require_square(a, "commutator");
    require_same_shape(a, b, "commutator");
    return a * b - b * a;
}

CMatrix unitary_log(const CMatrix& u, double tol) {
    require_square(u, "unitary_log");
    const double defect = unitary_defect(u);
    if (!(defect <= tol)) {
        std::ostringstream os;
        os << "unitary_log: matrix is not unitary, max |U U^dagger - I| = " << defect
           << " exceeds tolerance " << tol;
        throw std::invalid_argument(os.str());
    }
    // A unitary matrix is normal, so its complex Schur form is diagonal.
    Eigen::ComplexSchur<CMatrix> schur(u);
    const CMatrix& q = schur.matrixU();
    const CMatrix& t = schur.matrixT();
    CVector logs(t.rows());
    for (Eigen::Index k = 0; k < t.rows(); ++k) {
        logs(k) = Complex(0.0, std::arg(t(k, k)));
    }
    return q * logs.asDiagonal() * q.adjoint();
}

}  // namespace numerics
}  // namespace qsb
