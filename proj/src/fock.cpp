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

#include "qsb/fock.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace qsb::fock {

namespace {

// Occupations of `modes` modes with exactly n particles, descending lexicographic.
void enumerate_sector(int modes, int n, std::vector<Occupation>& out) {
    Occupation current(static_cast<std::size_t>(modes), 0);
    std::function<void(int, int)> fill = [&](int mode, int remaining) {
        if (mode == modes - 1) {
            current[static_cast<std::size_t>(mode)] = remaining;
            out.push_back(current);
            return;
        }
        for (int m = remaining; m >= 0; --m) {
            current[static_cast<std::size_t>(mode)] = m;
            fill(mode + 1, remaining - m);
        }
    };
    fill(0, n);
}

void require_modes(const FockBasis& basis, const CVector& u, const char* what) {
    if (u.size() != basis.modes()) {
        std::ostringstream os;
        os << what << ": vector has " << u.size() << " entries, basis has " << basis.modes()
           << " modes";
        throw std::invalid_argument(os.str());
    }
}

void require_mode_matrix(const FockBasis& basis, const CMatrix& k, const char* what) {
    if (k.rows() != basis.modes() || k.cols() != basis.modes()) {
        std::ostringstream os;
        os << what << ": expected a " << basis.modes() << "x" << basis.modes()
           << " matrix, got " << k.rows() << "x" << k.cols();
        throw std::invalid_argument(os.str());
    }
}

void require_same_basis(const BasisPtr& a, const BasisPtr& b, const char* what) {
    if (!a || !b || !(*a == *b)) {
        throw std::invalid_argument(std::string(what) + ": basis mismatch");
    }
}

double factorial(int n) {
    return std::tgamma(static_cast<double>(n) + 1.0);
}

}  // namespace

FockBasis::FockBasis(int modes, int cutoff) : modes_(modes), cutoff_(cutoff) {
    if (modes < 1) throw std::invalid_argument("FockBasis: need at least one mode");
    if (cutoff < 0) throw std::invalid_argument("FockBasis: cutoff must be non-negative");
    sector_offsets_.push_back(0);
    for (int n = 0; n <= cutoff; ++n) {
        enumerate_sector(modes, n, states_);
        sector_offsets_.push_back(states_.size());
    }
    totals_.reserve(states_.size());
    for (std::size_t i = 0; i < states_.size(); ++i) {
        int total = 0;
        for (int m : states_[i]) total += m;
        totals_.push_back(total);
        lookup_.emplace(key(states_[i]), i);
    }
}

std::size_t FockBasis::key(std::span<const int> occupation) const {
    std::size_t k = 0;
    for (int m : occupation) k = k * static_cast<std::size_t>(cutoff_ + 1) + static_cast<std::size_t>(m);
    return k;
}

long FockBasis::index_of(std::span<const int> occupation) const {
    if (occupation.size() != static_cast<std::size_t>(modes_)) return -1;
    int total = 0;
    for (int m : occupation) {
        if (m < 0) return -1;
        total += m;
    }
    if (total > cutoff_) return -1;
    const auto it = lookup_.find(key(occupation));
    return it == lookup_.end() ? -1 : static_cast<long>(it->second);
}

std::size_t FockBasis::sector_begin(int n) const {
    if (n < 0 || n > cutoff_) throw std::out_of_range("FockBasis::sector_begin");
    return sector_offsets_[static_cast<std::size_t>(n)];
}

std::size_t FockBasis::sector_end(int n) const {
    if (n < 0 || n > cutoff_) throw std::out_of_range("FockBasis::sector_end");
    return sector_offsets_[static_cast<std::size_t>(n) + 1];
}

std::size_t FockBasis::expected_dim(int modes, int cutoff) {
    // C(d+N, N) computed incrementally to stay exact in integers.
    std::size_t c = 1;
    for (int k = 1; k <= cutoff; ++k) {
        c = c * static_cast<std::size_t>(modes + k) / static_cast<std::size_t>(k);
    }
    return c;
}

BasisPtr make_basis(int modes, int cutoff) {
    return std::make_shared<const FockBasis>(modes, cutoff);
}

FockVector FockOperator::apply(const FockVector& v) const {
    require_same_basis(basis, v.basis, "FockOperator::apply");
    return {basis, matrix * v.coeffs};
}

FockOperator operator*(const FockOperator& a, const FockOperator& b) {
    require_same_basis(a.basis, b.basis, "FockOperator product");
    return {a.basis, a.matrix * b.matrix};
}

FockOperator operator+(const FockOperator& a, const FockOperator& b) {
    require_same_basis(a.basis, b.basis, "FockOperator sum");
    return {a.basis, a.matrix + b.matrix};
}

FockOperator operator-(const FockOperator& a, const FockOperator& b) {
    require_same_basis(a.basis, b.basis, "FockOperator difference");
    return {a.basis, a.matrix - b.matrix};
}

FockOperator operator*(Complex s, const FockOperator& a) {
    return {a.basis, s * a.matrix};
}

FockOperator identity(const BasisPtr& basis) {
    const auto n = static_cast<Eigen::Index>(basis->dim());
    return {basis, CMatrix::Identity(n, n)};
}

FockOperator zero_operator(const BasisPtr& basis) {
    const auto n = static_cast<Eigen::Index>(basis->dim());
    return {basis, CMatrix::Zero(n, n)};
}

FockVector vacuum(const BasisPtr& basis) {
    CVector c = CVector::Zero(static_cast<Eigen::Index>(basis->dim()));
    c(0) = 1.0;
    return {basis, c};
}

FockVector exponential_vector(const BasisPtr& basis, const CVector& u) {
    require_modes(*basis, u, "exponential_vector");
    CVector c(static_cast<Eigen::Index>(basis->dim()));
    for (std::size_t i = 0; i < basis->dim(); ++i) {
        Complex coeff = 1.0;
        const auto& m = basis->state(i);
        for (int k = 0; k < basis->modes(); ++k) {
            const int mk = m[static_cast<std::size_t>(k)];
            if (mk == 0) continue;
            coeff *= std::pow(u(k), mk) / std::sqrt(factorial(mk));
        }
        c(static_cast<Eigen::Index>(i)) = coeff;
    }
    return {basis, c};
}

Complex inner(const FockVector& x, const FockVector& y) {
    require_same_basis(x.basis, y.basis, "inner");
    return x.coeffs.dot(y.coeffs);
}

CMatrix mode_annihilation(const FockBasis& basis, int mode) {
    if (mode < 0 || mode >= basis.modes()) throw std::out_of_range("mode_annihilation: mode");
    const auto n = static_cast<Eigen::Index>(basis.dim());
    CMatrix a = CMatrix::Zero(n, n);
    Occupation lowered;
    for (std::size_t i = 0; i < basis.dim(); ++i) {
        const auto& m = basis.state(i);
        const int mk = m[static_cast<std::size_t>(mode)];
        if (mk == 0) continue;
        lowered = m;
        --lowered[static_cast<std::size_t>(mode)];
        const long j = basis.index_of(lowered);
        a(j, static_cast<Eigen::Index>(i)) = std::sqrt(static_cast<double>(mk));
    }
    return a;
}

FockOperator annihilation(const BasisPtr& basis, const CVector& u) {
    require_modes(*basis, u, "annihilation");
    const auto n = static_cast<Eigen::Index>(basis->dim());
    CMatrix a = CMatrix::Zero(n, n);
    for (int k = 0; k < basis->modes(); ++k) {
        if (u(k) == Complex(0.0)) continue;
        a += std::conj(u(k)) * mode_annihilation(*basis, k);
    }
    return {basis, a};
}

FockOperator creation(const BasisPtr& basis, const CVector& u) {
    // Same matrix as annihilation(u)^dagger; the truncated adjoint drops the
    // amplitude that would leave the cutoff sector.
    return annihilation(basis, u).adjoint();
}

FockOperator conservation(const BasisPtr& basis, const CMatrix& k) {
    require_mode_matrix(*basis, k, "conservation");
    const auto n = static_cast<Eigen::Index>(basis->dim());
    CMatrix lam = CMatrix::Zero(n, n);
    Occupation target;
    const int d = basis->modes();
    for (std::size_t i = 0; i < basis->dim(); ++i) {
        const auto& m = basis->state(i);
        for (int l = 0; l < d; ++l) {
            const int ml = m[static_cast<std::size_t>(l)];
            if (ml == 0) continue;
            for (int r = 0; r < d; ++r) {
                const Complex krl = k(r, l);
                if (krl == Complex(0.0)) continue;
                target = m;
                --target[static_cast<std::size_t>(l)];
                const double raise = std::sqrt(static_cast<double>(target[static_cast<std::size_t>(r)] + 1));
                ++target[static_cast<std::size_t>(r)];
                const long j = basis->index_of(target);
                lam(j, static_cast<Eigen::Index>(i)) +=
                    krl * raise * std::sqrt(static_cast<double>(ml));
            }
        }
    }
    return {basis, lam};
}

FockOperator second_quantization(const BasisPtr& basis, const CMatrix& t, double tol) {
    require_mode_matrix(*basis, t, "second_quantization");
    const double sigma = numerics::largest_singular_value(t);
    if (sigma > 1.0 + tol) {
        std::ostringstream os;
        os << "second_quantization: operator is not a contraction, largest singular value "
           << sigma << " exceeds 1 + " << tol;
        throw std::invalid_argument(os.str());
    }
    const int d = basis->modes();
    const auto n = static_cast<Eigen::Index>(basis->dim());
    CMatrix gamma = CMatrix::Zero(n, n);

    // Gamma(T) |m> = prod_l (a^dagger(T e_l))^{m_l} / sqrt(m_l!) |0>. Each
    // column stays inside its own sector, so the truncated ladder is exact.
    // Raising by a^dagger(v) is applied sparsely over the current sector.
    std::vector<CMatrix> raise_by_column;
    raise_by_column.reserve(static_cast<std::size_t>(d));
    for (int l = 0; l < d; ++l) {
        raise_by_column.push_back(creation(basis, t.col(l)).matrix);
    }
    for (std::size_t i = 0; i < basis->dim(); ++i) {
        const auto& m = basis->state(i);
        CVector v = CVector::Zero(n);
        v(0) = 1.0;
        int level = 0;
        for (int l = 0; l < d; ++l) {
            const int ml = m[static_cast<std::size_t>(l)];
            for (int rep = 0; rep < ml; ++rep) {
                const auto lo = static_cast<Eigen::Index>(basis->sector_begin(level));
                const auto hi = static_cast<Eigen::Index>(basis->sector_end(level));
                const auto lo1 = static_cast<Eigen::Index>(basis->sector_begin(level + 1));
                const auto hi1 = static_cast<Eigen::Index>(basis->sector_end(level + 1));
                CVector next = CVector::Zero(n);
                next.segment(lo1, hi1 - lo1) =
                    raise_by_column[static_cast<std::size_t>(l)].block(lo1, lo, hi1 - lo1, hi - lo) *
                    v.segment(lo, hi - lo);
                v = std::move(next);
                ++level;
            }
            v /= std::sqrt(factorial(ml));
        }
        gamma.col(static_cast<Eigen::Index>(i)) = v;
    }
    return {basis, gamma};
}

FockOperator second_quantization_unitary(const BasisPtr& basis, const CMatrix& u) {
    require_mode_matrix(*basis, u, "second_quantization_unitary");
    const CMatrix log_u = numerics::unitary_log(u);
    return {basis, numerics::mat_exp(conservation(basis, log_u).matrix)};
}

FockOperator momentum(const BasisPtr& basis, const CVector& u) {
    const CMatrix a = annihilation(basis, u).matrix;
    return {basis, kI * (a.adjoint() - a)};
}

FockOperator weyl(const BasisPtr& basis, const CVector& u) {
    const CMatrix a = annihilation(basis, u).matrix;
    return {basis, numerics::mat_exp(a.adjoint() - a)};
}

FockOperator weyl_pair(const BasisPtr& basis, const CVector& u, const CMatrix& unitary) {
    require_mode_matrix(*basis, unitary, "weyl_pair");
    const double defect = numerics::unitary_defect(unitary);
    if (defect > default_tolerances().unitary) {
        std::ostringstream os;
        os << "weyl_pair: U is not unitary, max |U U^dagger - I| = " << defect
           << " exceeds tolerance " << default_tolerances().unitary;
        throw std::invalid_argument(os.str());
    }
    return weyl(basis, u) * second_quantization(basis, unitary);
}

Complex dilated_conservation_cf(const BasisPtr& basis, const CVector& u, const CMatrix& h,
                                double t) {
    require_mode_matrix(*basis, h, "dilated_conservation_cf");
    const double defect = numerics::hermitian_defect(h);
    if (defect > default_tolerances().hermitian) {
        std::ostringstream os;
        os << "dilated_conservation_cf: H is not Hermitian, max |H - H^dagger| = " << defect
           << " exceeds tolerance " << default_tolerances().hermitian;
        throw std::invalid_argument(os.str());
    }
    const FockVector shifted = weyl(basis, u).apply(vacuum(basis));
    const CMatrix rotation = numerics::mat_exp(Complex(0.0, t) * conservation(basis, h).matrix);
    // W(-u) = W(u)^dagger, so the matrix element is <W(u)0 | e^{it lambda(H)} W(u)0>.
    return shifted.coeffs.dot(rotation * shifted.coeffs);
}

CMatrix sector_projector(const FockBasis& basis, int level) {
    const auto n = static_cast<Eigen::Index>(basis.dim());
    CMatrix p = CMatrix::Zero(n, n);
    for (std::size_t i = 0; i < basis.dim(); ++i) {
        if (basis.particle_number(i) <= level) p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
    }
    return p;
}

}  // namespace qsb::fock
