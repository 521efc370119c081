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

// ito_algebra.hpp: strength matrices over C (+) K and the Ito product.
//
// An ItoMatrix is the block matrix
//
//     ( alpha   <bra| )
//     ( |ket>   op    )
//
// acting on C (+) K. The bra block is stored as a plain vector b, and the row
// it represents is b^dagger, so <bra|w> = b.dot(w).

#pragma once

#include "qsb/grid.hpp"
#include "qsb/numerics.hpp"

#include <vector>

namespace qsb::ito {

struct ItoMatrix {
    Complex alpha{0.0};
    CVector bra;
    CVector ket;
    CMatrix op;

    static ItoMatrix zero(int modes);
    static ItoMatrix time(Complex alpha, int modes);
    static ItoMatrix creation(const CVector& ket);
    static ItoMatrix annihilation(const CVector& bra);
    static ItoMatrix conservation(const CMatrix& op);

    int modes() const noexcept { return static_cast<int>(op.rows()); }

    /// Full (1+d)x(1+d) block matrix.
    CMatrix block() const;
    static ItoMatrix from_block(const CMatrix& block);

    void validate() const;
};

ItoMatrix operator+(const ItoMatrix& a, const ItoMatrix& b);
ItoMatrix operator*(Complex s, const ItoMatrix& a);

/// N1 o N2 = N1 diag(0, I) N2. The input alphas do not reach the output.
ItoMatrix circ(const ItoMatrix& n1, const ItoMatrix& n2);

/// Sandwich product computed on full block matrices (reference path).
ItoMatrix circ_by_blocks(const ItoMatrix& n1, const ItoMatrix& n2);

ItoMatrix dagger(const ItoMatrix& n);

/// nu_N(f, g) = alpha + <f|ket> + <f|op|g> + <bra|g>.
Complex nu(const ItoMatrix& n, const CVector& f, const CVector& g);

/// dLambda_{N1} dLambda_{N2} = dLambda_{N1 o N2}.
inline ItoMatrix ito_product_table(const ItoMatrix& n1, const ItoMatrix& n2) {
    return circ(n1, n2);
}

double max_abs_difference(const ItoMatrix& a, const ItoMatrix& b);

/// Piecewise-constant strength: one ItoMatrix per slot of a grid.
class StrengthFunction {
public:
    StrengthFunction(GridPtr grid, std::vector<ItoMatrix> values);

    static StrengthFunction constant(GridPtr grid, const ItoMatrix& value);

    const GridPtr& grid() const noexcept { return grid_; }
    int modes() const noexcept { return modes_; }
    std::size_t slot_count() const noexcept { return values_.size(); }
    const ItoMatrix& value(std::size_t slot) const { return values_.at(slot); }
    const std::vector<ItoMatrix>& values() const noexcept { return values_; }

    StrengthFunction refined(std::size_t factor, GridPtr fine_grid) const;

private:
    GridPtr grid_;
    int modes_;
    std::vector<ItoMatrix> values_;
};

StrengthFunction dagger(const StrengthFunction& n);
StrengthFunction circ(const StrengthFunction& n1, const StrengthFunction& n2);

/// nu_N(f, g) on one slot.
Complex nu(const StrengthFunction& n, const StepFunction& f, const StepFunction& g,
           std::size_t slot);

/// int_0^t nu_N(f, g)(s) ds, exact for step data. t must be a grid point.
Complex nu_integral(const StrengthFunction& n, const StepFunction& f, const StepFunction& g,
                    double t);

}  // namespace qsb::ito
