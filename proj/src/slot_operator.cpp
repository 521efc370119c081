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

#include "qsb/slot_operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qsb::qsc {

namespace {

using RowMajorMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* what) {
    if (a != b) {
        if (!a || !b || a->slot_dim() != b->slot_dim() || a->global_dim() != b->global_dim() ||
            !(*a->grid() == *b->grid())) {
            throw std::invalid_argument(std::string(what) + ": operators live on different spaces");
        }
    }
}

std::vector<SlotFactor> merge_factors(const std::vector<SlotFactor>& a,
                                      const std::vector<SlotFactor>& b) {
    std::vector<SlotFactor> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].slot < b[j].slot)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].slot < a[i].slot) {
            out.push_back(b[j++]);
        } else {
            out.push_back({a[i].slot, a[i].matrix * b[j].matrix});
            ++i;
            ++j;
        }
    }
    return out;
}

CVector apply_term(const SlotSpace& space, const ProductTerm& term, const CVector& v) {
    CVector out = v;
    for (const auto& f : term.factors) out = apply_local(space, f.slot, f.matrix, out);
    return term.coeff * out;
}

}  // namespace

SlotSpace::SlotSpace(GridPtr grid, int modes, int slot_cutoff, std::size_t dim_limit)
    : grid_(std::move(grid)),
      slot_basis_(fock::make_basis(modes, slot_cutoff)),
      global_dim_(1),
      dim_limit_(dim_limit) {
    if (!grid_) throw std::invalid_argument("SlotSpace: null grid");
    const std::size_t s = slot_basis_->dim();
    for (std::size_t j = 0; j < grid_->slot_count(); ++j) {
        if (global_dim_ > dim_limit_ / s) {
            std::ostringstream os;
            os << "SlotSpace: global dimension " << s << "^" << grid_->slot_count()
               << " exceeds the configured limit " << dim_limit_;
            throw DimensionLimitError(os.str());
        }
        global_dim_ *= s;
    }
}

std::size_t SlotSpace::span_dim(std::size_t first, std::size_t last) const {
    std::size_t d = 1;
    for (std::size_t j = first; j < last; ++j) d *= slot_dim();
    return d;
}

SpacePtr make_space(GridPtr grid, int modes, int slot_cutoff, std::size_t dim_limit) {
    return std::make_shared<const SlotSpace>(std::move(grid), modes, slot_cutoff, dim_limit);
}

CVector apply_local(const SlotSpace& space, std::size_t slot, const CMatrix& m, const CVector& v) {
    const auto s = static_cast<Eigen::Index>(space.slot_dim());
    if (slot >= space.slot_count()) throw std::out_of_range("apply_local: slot index");
    if (m.rows() != s || m.cols() != s) throw std::invalid_argument("apply_local: factor shape");
    if (static_cast<std::size_t>(v.size()) != space.global_dim()) {
        throw std::invalid_argument("apply_local: vector length does not match the space");
    }
    const auto left = static_cast<Eigen::Index>(space.span_dim(0, slot));
    const auto right = static_cast<Eigen::Index>(space.span_dim(slot + 1, space.slot_count()));
    CVector out(v.size());
    for (Eigen::Index l = 0; l < left; ++l) {
        Eigen::Map<const RowMajorMatrix> in_block(v.data() + l * s * right, s, right);
        Eigen::Map<RowMajorMatrix> out_block(out.data() + l * s * right, s, right);
        out_block.noalias() = m * in_block;
    }
    return out;
}

CVector slot_argument(const StepFunction& f, std::size_t slot) {
    return f.value(slot) * std::sqrt(f.grid()->width(slot));
}

CVector embed_exponential(const SlotSpace& space, const StepFunction& f) {
    require_same_grid(space.grid(), f.grid(), "embed_exponential");
    if (f.modes() != space.modes()) throw std::invalid_argument("embed_exponential: mode count");
    CVector out = CVector::Ones(1);
    for (std::size_t j = 0; j < space.slot_count(); ++j) {
        const CVector local =
            fock::exponential_vector(space.slot_basis(), slot_argument(f, j)).coeffs;
        CVector next(out.size() * local.size());
        for (Eigen::Index a = 0; a < out.size(); ++a) {
            next.segment(a * local.size(), local.size()) = out(a) * local;
        }
        out = std::move(next);
    }
    return out;
}

GlobalOperator GlobalOperator::zero(SpacePtr space) {
    GlobalOperator op(std::move(space));
    op.update_support();
    return op;
}

GlobalOperator GlobalOperator::identity(SpacePtr space) {
    GlobalOperator op(std::move(space));
    op.terms_.push_back(ProductTerm{Complex(1.0), {}});
    op.update_support();
    return op;
}

GlobalOperator GlobalOperator::local(SpacePtr space, std::size_t slot, CMatrix matrix) {
    if (slot >= space->slot_count()) throw std::out_of_range("GlobalOperator::local: slot index");
    const auto s = static_cast<Eigen::Index>(space->slot_dim());
    if (matrix.rows() != s || matrix.cols() != s) {
        throw std::invalid_argument("GlobalOperator::local: factor shape");
    }
    GlobalOperator op(std::move(space));
    op.terms_.push_back(ProductTerm{Complex(1.0), {SlotFactor{slot, std::move(matrix)}}});
    op.update_support();
    return op;
}

GlobalOperator GlobalOperator::from_terms(SpacePtr space, std::vector<ProductTerm> terms) {
    for (auto& t : terms) {
        std::sort(t.factors.begin(), t.factors.end(),
                  [](const SlotFactor& a, const SlotFactor& b) { return a.slot < b.slot; });
        for (std::size_t k = 1; k < t.factors.size(); ++k) {
            if (t.factors[k].slot == t.factors[k - 1].slot) {
                throw std::invalid_argument("GlobalOperator::from_terms: repeated slot in a term");
            }
        }
    }
    GlobalOperator op(std::move(space));
    op.terms_ = std::move(terms);
    op.update_support();
    return op;
}

GlobalOperator GlobalOperator::from_dense(SpacePtr space, CMatrix matrix) {
    const auto n = static_cast<Eigen::Index>(space->global_dim());
    if (matrix.rows() != n || matrix.cols() != n) {
        throw std::invalid_argument("GlobalOperator::from_dense: shape does not match the space");
    }
    GlobalOperator op(std::move(space));
    op.dense_ = std::move(matrix);
    op.support_begin_ = 0;
    op.support_end_ = op.space_->slot_count();
    return op;
}

GlobalOperator GlobalOperator::from_prefix_block(SpacePtr space, std::size_t prefix_slots,
                                                 const CMatrix& block) {
    if (prefix_slots > space->slot_count()) {
        throw std::out_of_range("GlobalOperator::from_prefix_block: prefix too long");
    }
    const auto head = static_cast<Eigen::Index>(space->span_dim(0, prefix_slots));
    const auto tail = static_cast<Eigen::Index>(space->span_dim(prefix_slots, space->slot_count()));
    if (block.rows() != head || block.cols() != head) {
        throw std::invalid_argument("GlobalOperator::from_prefix_block: block shape");
    }
    if (static_cast<std::size_t>(head * tail) > kDenseMatrixLimit) {
        throw DimensionLimitError("GlobalOperator::from_prefix_block: space too large for dense form");
    }
    CMatrix full = CMatrix::Zero(head * tail, head * tail);
    for (Eigen::Index r = 0; r < head; ++r) {
        for (Eigen::Index c = 0; c < head; ++c) {
            if (block(r, c) == Complex(0.0)) continue;
            for (Eigen::Index k = 0; k < tail; ++k) full(r * tail + k, c * tail + k) = block(r, c);
        }
    }
    GlobalOperator op = from_dense(std::move(space), std::move(full));
    op.support_end_ = prefix_slots;
    return op;
}

void GlobalOperator::update_support() {
    if (dense_) return;
    std::size_t lo = space_->slot_count();
    std::size_t hi = 0;
    for (const auto& t : terms_) {
        for (const auto& f : t.factors) {
            lo = std::min(lo, f.slot);
            hi = std::max(hi, f.slot + 1);
        }
    }
    support_begin_ = lo;
    support_end_ = hi;
}

CVector GlobalOperator::apply(const CVector& v) const {
    if (static_cast<std::size_t>(v.size()) != space_->global_dim()) {
        throw std::invalid_argument("GlobalOperator::apply: vector length does not match the space");
    }
    if (dense_) return (*dense_) * v;
    CVector out = CVector::Zero(v.size());
    for (const auto& t : terms_) out += apply_term(*space_, t, v);
    return out;
}

CMatrix GlobalOperator::to_dense() const {
    if (dense_) return *dense_;
    const auto n = static_cast<Eigen::Index>(space_->global_dim());
    if (space_->global_dim() > kDenseMatrixLimit) {
        throw DimensionLimitError("GlobalOperator::to_dense: space too large for dense form");
    }
    CMatrix out(n, n);
    CVector e = CVector::Zero(n);
    for (Eigen::Index c = 0; c < n; ++c) {
        e(c) = 1.0;
        out.col(c) = apply(e);
        e(c) = 0.0;
    }
    return out;
}

GlobalOperator GlobalOperator::adjoint() const {
    GlobalOperator op(space_);
    if (dense_) {
        op.dense_ = dense_->adjoint();
    } else {
        op.terms_.reserve(terms_.size());
        for (const auto& t : terms_) {
            ProductTerm a{std::conj(t.coeff), {}};
            a.factors.reserve(t.factors.size());
            for (const auto& f : t.factors) a.factors.push_back({f.slot, f.matrix.adjoint()});
            op.terms_.push_back(std::move(a));
        }
    }
    op.support_begin_ = support_begin_;
    op.support_end_ = support_end_;
    return op;
}

GlobalOperator operator+(const GlobalOperator& a, const GlobalOperator& b) {
    require_same_space(a.space_, b.space_, "GlobalOperator sum");
    GlobalOperator op(a.space_);
    if (a.dense_ || b.dense_) {
        op.dense_ = a.to_dense() + b.to_dense();
        op.support_begin_ = std::min(a.support_begin_, b.support_begin_);
        op.support_end_ = std::max(a.support_end_, b.support_end_);
        return op;
    }
    op.terms_ = a.terms_;
    op.terms_.insert(op.terms_.end(), b.terms_.begin(), b.terms_.end());
    op.update_support();
    return op;
}

GlobalOperator operator-(const GlobalOperator& a, const GlobalOperator& b) {
    return a + Complex(-1.0) * b;
}

GlobalOperator operator*(Complex s, const GlobalOperator& a) {
    GlobalOperator op = a;
    if (op.dense_) {
        *op.dense_ *= s;
    } else {
        for (auto& t : op.terms_) t.coeff *= s;
    }
    return op;
}

GlobalOperator operator*(const GlobalOperator& a, const GlobalOperator& b) {
    require_same_space(a.space_, b.space_, "GlobalOperator product");
    GlobalOperator op(a.space_);
    if (a.dense_ || b.dense_) {
        op.dense_ = a.to_dense() * b.to_dense();
        op.support_begin_ = std::min(a.support_begin_, b.support_begin_);
        op.support_end_ = std::max(a.support_end_, b.support_end_);
        return op;
    }
    op.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& ta : a.terms_) {
        for (const auto& tb : b.terms_) {
            op.terms_.push_back(ProductTerm{ta.coeff * tb.coeff, merge_factors(ta.factors, tb.factors)});
        }
    }
    op.update_support();
    return op;
}

}  // namespace qsb::qsc
