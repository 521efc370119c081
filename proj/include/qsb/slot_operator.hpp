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

// slot_operator.hpp: the tensor product of per-slot truncated Fock spaces and
// operators on it.
//
// Global basis index: slot 0 is the most significant tensor factor, so the
// index of (m_0, ..., m_{n-1}) is sum_j m_j * s^{n-1-j} with s the slot dim.

#pragma once

#include "qsb/fock.hpp"
#include "qsb/grid.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

namespace qsb::qsc {

inline constexpr std::size_t kDefaultDimLimit = 20000;
// Largest global dimension materialized as a dense matrix.
inline constexpr std::size_t kDenseMatrixLimit = 2048;

class DimensionLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SlotSpace {
public:
    /// Throws DimensionLimitError when slot_dim^slot_count exceeds `dim_limit`.
    SlotSpace(GridPtr grid, int modes, int slot_cutoff, std::size_t dim_limit = kDefaultDimLimit);

    const GridPtr& grid() const noexcept { return grid_; }
    int modes() const noexcept { return slot_basis_->modes(); }
    int slot_cutoff() const noexcept { return slot_basis_->cutoff(); }
    const fock::BasisPtr& slot_basis() const noexcept { return slot_basis_; }
    std::size_t slot_dim() const noexcept { return slot_basis_->dim(); }
    std::size_t slot_count() const noexcept { return grid_->slot_count(); }
    std::size_t global_dim() const noexcept { return global_dim_; }
    std::size_t dim_limit() const noexcept { return dim_limit_; }

    /// Product of slot_dim over slots [first, last).
    std::size_t span_dim(std::size_t first, std::size_t last) const;

private:
    GridPtr grid_;
    fock::BasisPtr slot_basis_;
    std::size_t global_dim_;
    std::size_t dim_limit_;
};

using SpacePtr = std::shared_ptr<const SlotSpace>;

SpacePtr make_space(GridPtr grid, int modes, int slot_cutoff,
                    std::size_t dim_limit = kDefaultDimLimit);

/// One tensor factor acting on a single slot.
struct SlotFactor {
    std::size_t slot;
    CMatrix matrix;
};

/// coeff * (tensor product of factors), identity on slots not listed.
/// Factors are sorted by slot with at most one per slot.
struct ProductTerm {
    Complex coeff{1.0};
    std::vector<SlotFactor> factors;
};

/// Operator on the slot space, kept either as a sum of product terms (the
/// factor-list form) or as a dense global matrix.
class GlobalOperator {
public:
    static GlobalOperator zero(SpacePtr space);
    static GlobalOperator identity(SpacePtr space);
    static GlobalOperator local(SpacePtr space, std::size_t slot, CMatrix matrix);
    static GlobalOperator from_terms(SpacePtr space, std::vector<ProductTerm> terms);
    static GlobalOperator from_dense(SpacePtr space, CMatrix matrix);

    /// block (x) identity, where block acts on slots [0, prefix_slots).
    static GlobalOperator from_prefix_block(SpacePtr space, std::size_t prefix_slots,
                                            const CMatrix& block);

    const SpacePtr& space() const noexcept { return space_; }
    bool is_dense() const noexcept { return dense_.has_value(); }
    const std::vector<ProductTerm>& terms() const noexcept { return terms_; }

    /// One past the highest slot the operator acts on non-trivially. Dense
    /// operators report the prefix they were built from, or slot_count().
    std::size_t support_end() const noexcept { return support_end_; }
    /// Lowest slot acted on; slot_count() for scalar multiples of identity.
    std::size_t support_begin() const noexcept { return support_begin_; }

    CVector apply(const CVector& v) const;
    CMatrix to_dense() const;
    GlobalOperator adjoint() const;

    friend GlobalOperator operator+(const GlobalOperator& a, const GlobalOperator& b);
    friend GlobalOperator operator-(const GlobalOperator& a, const GlobalOperator& b);
    friend GlobalOperator operator*(const GlobalOperator& a, const GlobalOperator& b);
    friend GlobalOperator operator*(Complex s, const GlobalOperator& a);

private:
    explicit GlobalOperator(SpacePtr space) : space_(std::move(space)) {}
    void update_support();

    SpacePtr space_;
    std::vector<ProductTerm> terms_;
    std::optional<CMatrix> dense_;
    std::size_t support_begin_ = 0;
    std::size_t support_end_ = 0;
};

/// Applies a single-slot matrix to a global vector.
CVector apply_local(const SlotSpace& space, std::size_t slot, const CMatrix& m, const CVector& v);

/// (x)_j e(f_j sqrt(Delta_j)) on the slot space.
CVector embed_exponential(const SlotSpace& space, const StepFunction& f);

/// Per-slot exponential vector argument f_j sqrt(Delta_j).
CVector slot_argument(const StepFunction& f, std::size_t slot);

}  // namespace qsb::qsc
