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

// fock.hpp: truncated boson Fock space over C^d in the occupation-number basis.
//
// States are multi-indices (m_1, ..., m_d) with sum m_k <= cutoff, ordered by
// total particle number and, inside a sector, in descending lexicographic
// order so that the one-particle sector lists modes 1..d in order. Index 0 is
// the vacuum.
//
// Truncation convention: creation drops amplitude that would leave the cutoff
// sector. Creation is therefore exactly the adjoint of annihilation as a
// matrix, and ladder identities hold exactly on the guarded subspace
// (sectors <= cutoff - 2).

#pragma once

#include "qsb/numerics.hpp"

#include <cstddef>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

namespace qsb::fock {

using Occupation = std::vector<int>;

class FockBasis {
public:
    FockBasis(int modes, int cutoff);

    int modes() const noexcept { return modes_; }
    int cutoff() const noexcept { return cutoff_; }
    std::size_t dim() const noexcept { return states_.size(); }

    const Occupation& state(std::size_t index) const { return states_.at(index); }
    const std::vector<Occupation>& states() const noexcept { return states_; }
    int particle_number(std::size_t index) const { return totals_.at(index); }

    /// Index of an occupation pattern, or -1 when it lies outside the truncation.
    long index_of(std::span<const int> occupation) const;

    /// Half-open index range [begin, end) of the n-particle sector.
    std::size_t sector_begin(int n) const;
    std::size_t sector_end(int n) const;

    /// Closed-form dimension sum_{k<=N} C(d+k-1, k) = C(d+N, N).
    static std::size_t expected_dim(int modes, int cutoff);

    bool operator==(const FockBasis& other) const noexcept {
        return modes_ == other.modes_ && cutoff_ == other.cutoff_;
    }

private:
    int modes_;
    int cutoff_;
    std::vector<Occupation> states_;
    std::vector<int> totals_;
    std::vector<std::size_t> sector_offsets_;
    std::unordered_map<std::size_t, std::size_t> lookup_;

    std::size_t key(std::span<const int> occupation) const;
};

using BasisPtr = std::shared_ptr<const FockBasis>;

BasisPtr make_basis(int modes, int cutoff);

struct FockVector {
    BasisPtr basis;
    CVector coeffs;
};

struct FockOperator {
    BasisPtr basis;
    CMatrix matrix;

    FockOperator adjoint() const { return {basis, matrix.adjoint()}; }
    FockVector apply(const FockVector& v) const;
};

FockOperator operator*(const FockOperator& a, const FockOperator& b);
FockOperator operator+(const FockOperator& a, const FockOperator& b);
FockOperator operator-(const FockOperator& a, const FockOperator& b);
FockOperator operator*(Complex s, const FockOperator& a);

FockOperator identity(const BasisPtr& basis);
FockOperator zero_operator(const BasisPtr& basis);
FockVector vacuum(const BasisPtr& basis);

/// Coefficient at m is prod_k u_k^{m_k} / sqrt(m_k!).
FockVector exponential_vector(const BasisPtr& basis, const CVector& u);

/// Antilinear in x, linear in y.
Complex inner(const FockVector& x, const FockVector& y);

/// Per-mode annihilation matrix a_k (0-based k).
CMatrix mode_annihilation(const FockBasis& basis, int mode);

/// a(u) = sum_k conj(u_k) a_k, antilinear in u.
FockOperator annihilation(const BasisPtr& basis, const CVector& u);
/// a^dagger(u) = sum_k u_k a_k^dagger, linear in u.
FockOperator creation(const BasisPtr& basis, const CVector& u);

/// lambda(K) = sum_{k,l} K_kl a_k^dagger a_l; particle-number preserving.
FockOperator conservation(const BasisPtr& basis, const CMatrix& k);

/// Gamma(T) for a contraction T, built sector by sector from symmetrized powers.
FockOperator second_quantization(const BasisPtr& basis, const CMatrix& t,
                                 double tol = default_tolerances().contraction);

/// Gamma(U) for unitary U as exp(lambda(log U)) with the principal logarithm.
FockOperator second_quantization_unitary(const BasisPtr& basis, const CMatrix& u);

/// p(u) = i (a^dagger(u) - a(u)).
FockOperator momentum(const BasisPtr& basis, const CVector& u);

/// W(u) = exp(-i p(u)) = exp(a^dagger(u) - a(u)).
FockOperator weyl(const BasisPtr& basis, const CVector& u);

/// W(u, U) = W(u) Gamma(U). Rejects non-unitary U.
FockOperator weyl_pair(const BasisPtr& basis, const CVector& u, const CMatrix& unitary);

/// <e(0)| W(-u) exp(i t lambda(H)) W(u) |e(0)> from truncated matrices.
Complex dilated_conservation_cf(const BasisPtr& basis, const CVector& u, const CMatrix& h,
                                double t);

/// Diagonal projector onto sectors with particle number <= level.
CMatrix sector_projector(const FockBasis& basis, int level);

}  // namespace qsb::fock
