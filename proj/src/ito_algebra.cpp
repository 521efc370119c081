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

#include "qsb/ito_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qsb::ito {

namespace {

void require_same_modes(const ItoMatrix& a, const ItoMatrix& b, const char* what) {
    if (a.modes() != b.modes()) {
        std::ostringstream os;
        os << what << ": dimension mismatch " << a.modes() << " vs " << b.modes();
        throw std::invalid_argument(os.str());
    }
}

}  // namespace

ItoMatrix ItoMatrix::zero(int modes) {
    return {Complex(0.0), CVector::Zero(modes), CVector::Zero(modes), CMatrix::Zero(modes, modes)};
}

ItoMatrix ItoMatrix::time(Complex alpha, int modes) {
    ItoMatrix n = zero(modes);
    n.alpha = alpha;
    return n;
}

ItoMatrix ItoMatrix::creation(const CVector& ket) {
    ItoMatrix n = zero(static_cast<int>(ket.size()));
    n.ket = ket;
    return n;
}

ItoMatrix ItoMatrix::annihilation(const CVector& bra) {
    ItoMatrix n = zero(static_cast<int>(bra.size()));
    n.bra = bra;
    return n;
}

ItoMatrix ItoMatrix::conservation(const CMatrix& op) {
    numerics::require_square(op, "ItoMatrix::conservation");
    ItoMatrix n = zero(static_cast<int>(op.rows()));
    n.op = op;
    return n;
}

void ItoMatrix::validate() const {
    const auto d = op.rows();
    if (op.cols() != d || bra.size() != d || ket.size() != d) {
        throw std::invalid_argument("ItoMatrix: inconsistent block dimensions");
    }
}

CMatrix ItoMatrix::block() const {
    validate();
    const auto d = op.rows();
    CMatrix b(d + 1, d + 1);
    b(0, 0) = alpha;
    b.block(0, 1, 1, d) = bra.adjoint();
    b.block(1, 0, d, 1) = ket;
    b.block(1, 1, d, d) = op;
    return b;
}

ItoMatrix ItoMatrix::from_block(const CMatrix& block) {
    numerics::require_square(block, "ItoMatrix::from_block");
    const auto d = block.rows() - 1;
    if (d < 1) throw std::invalid_argument("ItoMatrix::from_block: need at least one mode");
    ItoMatrix n;
    n.alpha = block(0, 0);
    n.bra = block.block(0, 1, 1, d).adjoint();
    n.ket = block.block(1, 0, d, 1);
    n.op = block.block(1, 1, d, d);
    return n;
}

ItoMatrix operator+(const ItoMatrix& a, const ItoMatrix& b) {
    require_same_modes(a, b, "ItoMatrix sum");
    return {a.alpha + b.alpha, a.bra + b.bra, a.ket + b.ket, a.op + b.op};
}

ItoMatrix operator*(Complex s, const ItoMatrix& a) {
    // The bra row scales by s, so the stored vector scales by conj(s).
    return {s * a.alpha, std::conj(s) * a.bra, s * a.ket, s * a.op};
}

ItoMatrix circ(const ItoMatrix& n1, const ItoMatrix& n2) {
    require_same_modes(n1, n2, "circ");
    ItoMatrix out;
    out.alpha = n1.bra.dot(n2.ket);
    // Row <bra1| K2 is represented by the vector K2^dagger bra1.
    out.bra = n2.op.adjoint() * n1.bra;
    out.ket = n1.op * n2.ket;
    out.op = n1.op * n2.op;
    return out;
}

ItoMatrix circ_by_blocks(const ItoMatrix& n1, const ItoMatrix& n2) {
    require_same_modes(n1, n2, "circ_by_blocks");
    const auto d = n1.modes();
    CMatrix middle = CMatrix::Identity(d + 1, d + 1);
    middle(0, 0) = 0.0;
    return ItoMatrix::from_block(n1.block() * middle * n2.block());
}

ItoMatrix dagger(const ItoMatrix& n) {
    return {std::conj(n.alpha), n.ket, n.bra, n.op.adjoint()};
}

Complex nu(const ItoMatrix& n, const CVector& f, const CVector& g) {
    if (f.size() != n.modes() || g.size() != n.modes()) {
        throw std::invalid_argument("nu: dimension mismatch");
    }
    return n.alpha + f.dot(n.ket) + f.dot(n.op * g) + n.bra.dot(g);
}

double max_abs_difference(const ItoMatrix& a, const ItoMatrix& b) {
    require_same_modes(a, b, "max_abs_difference");
    double m = std::abs(a.alpha - b.alpha);
    m = std::max(m, numerics::max_abs(CVector(a.bra - b.bra)));
    m = std::max(m, numerics::max_abs(CVector(a.ket - b.ket)));
    m = std::max(m, numerics::max_abs(CMatrix(a.op - b.op)));
    return m;
}

StrengthFunction::StrengthFunction(GridPtr grid, std::vector<ItoMatrix> values)
    : grid_(std::move(grid)), modes_(0), values_(std::move(values)) {
    if (!grid_) throw std::invalid_argument("StrengthFunction: null grid");
    if (values_.size() != grid_->slot_count()) {
        throw std::invalid_argument("StrengthFunction: value count must equal slot count");
    }
    modes_ = values_.front().modes();
    for (const auto& v : values_) {
        v.validate();
        if (v.modes() != modes_) throw std::invalid_argument("StrengthFunction: inconsistent d");
        if (!std::isfinite(std::abs(v.alpha)) || !v.bra.allFinite() || !v.ket.allFinite() ||
            !v.op.allFinite()) {
            throw std::invalid_argument("StrengthFunction: non-finite strength");
        }
    }
}

StrengthFunction StrengthFunction::constant(GridPtr grid, const ItoMatrix& value) {
    const std::size_t n = grid->slot_count();
    return StrengthFunction(std::move(grid), std::vector<ItoMatrix>(n, value));
}

StrengthFunction StrengthFunction::refined(std::size_t factor, GridPtr fine_grid) const {
    if (fine_grid->slot_count() != slot_count() * factor) {
        throw std::invalid_argument("StrengthFunction::refined: fine grid has the wrong slot count");
    }
    std::vector<ItoMatrix> v;
    v.reserve(fine_grid->slot_count());
    for (const auto& x : values_) {
        for (std::size_t k = 0; k < factor; ++k) v.push_back(x);
    }
    return StrengthFunction(std::move(fine_grid), std::move(v));
}

StrengthFunction dagger(const StrengthFunction& n) {
    std::vector<ItoMatrix> v;
    v.reserve(n.slot_count());
    for (const auto& x : n.values()) v.push_back(dagger(x));
    return StrengthFunction(n.grid(), std::move(v));
}

StrengthFunction circ(const StrengthFunction& n1, const StrengthFunction& n2) {
    require_same_grid(n1.grid(), n2.grid(), "circ");
    std::vector<ItoMatrix> v;
    v.reserve(n1.slot_count());
    for (std::size_t j = 0; j < n1.slot_count(); ++j) v.push_back(circ(n1.value(j), n2.value(j)));
    return StrengthFunction(n1.grid(), std::move(v));
}

Complex nu(const StrengthFunction& n, const StepFunction& f, const StepFunction& g,
           std::size_t slot) {
    return nu(n.value(slot), f.value(slot), g.value(slot));
}

Complex nu_integral(const StrengthFunction& n, const StepFunction& f, const StepFunction& g,
                    double t) {
    require_same_grid(n.grid(), f.grid(), "nu_integral");
    require_same_grid(n.grid(), g.grid(), "nu_integral");
    const std::size_t last = n.grid()->index_of(t);
    Complex s = 0.0;
    for (std::size_t j = 0; j < last; ++j) s += nu(n, f, g, j) * n.grid()->width(j);
    return s;
}

}  // namespace qsb::ito
