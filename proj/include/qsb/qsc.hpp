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

// qsc.hpp: discretized quantum stochastic integrals on the slot space and the
// fundamental-formula checks.
//
// Integrands come in three classes:
//   (i)   scalar step processes l(t_j) I,
//   (ii)  iterated integrals P = x(t) I + int Q dLambda_N built in an
//         IntegralFamily,
//   (iii) arbitrary adapted operators given slot-prefix by slot-prefix
//         (AdaptedStepProcess::from_prefix_blocks, dense engine only).
//
// Matrix elements <P e(f)|P' e(g)> of family members are available from four
// engines:
//   dense       global vectors on the slot space (oracle, exponential cost),
//   factorized  per-slot truncated matrices, linear in the slot count,
//   analytic    the same recursion with exact untruncated slot kernels,
//   continuum   the integrals read as regular (non-simple) processes, each
//               slot solved exactly as a linear ODE.

#pragma once

#include "qsb/ito_algebra.hpp"
#include "qsb/slot_operator.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qsb::qsc {

/// Slot-local increment alpha*Delta*I + a^dagger(ket sqrt(Delta)) + lambda(op)
/// + a(bra sqrt(Delta)) on one slot basis.
CMatrix local_increment(const fock::BasisPtr& slot_basis, const ito::ItoMatrix& n, double width);

/// The same increment embedded on slot j of the slot space.
GlobalOperator increment(const SpacePtr& space, std::size_t slot, const ito::ItoMatrix& n);

/// Simple adapted process: one operator per grid point t_0..t_n, L(t_j) acting
/// only on slots < j.
class AdaptedStepProcess {
public:
    AdaptedStepProcess(SpacePtr space, std::vector<GlobalOperator> values);

    static AdaptedStepProcess identity(SpacePtr space);
    static AdaptedStepProcess scalar(SpacePtr space, const std::vector<Complex>& values);
    /// blocks[j] acts on slots [0, j) and has dimension slot_dim^j.
    static AdaptedStepProcess from_prefix_blocks(SpacePtr space, const std::vector<CMatrix>& blocks);

    const SpacePtr& space() const noexcept { return space_; }
    std::size_t size() const noexcept { return values_.size(); }
    const GlobalOperator& value(std::size_t j) const { return values_.at(j); }

    AdaptedStepProcess adjoint() const;

private:
    SpacePtr space_;
    std::vector<GlobalOperator> values_;
};

/// sum_{j < k} L(t_j) (Lambda_N(t_{j+1}) - Lambda_N(t_j)) with t = t_k.
GlobalOperator stochastic_integral(const AdaptedStepProcess& l, const ito::StrengthFunction& n,
                                   double t);

/// X(t_k) = int_0^{t_k} L dLambda_N for every grid point.
AdaptedStepProcess integral_process(const AdaptedStepProcess& l, const ito::StrengthFunction& n);

/// A set of processes closed under "take the integrand". Node 0 is the
/// identity. Every other node is
///     P(t) = offset(t) I + int_0^t Q dLambda_N
/// with Q an earlier node; the integral part is optional.
class IntegralFamily {
public:
    struct Node {
        std::vector<Complex> offset;  // values at t_0..t_n
        std::optional<std::size_t> integrand;
        std::optional<ito::StrengthFunction> strength;
    };

    static constexpr std::size_t kIdentity = 0;

    IntegralFamily(GridPtr grid, int modes);

    /// Scalar step process, values at the grid points.
    std::size_t add_scalar(std::vector<Complex> values);
    /// constant * I + int Q dLambda_N.
    std::size_t add_integral(std::size_t integrand, ito::StrengthFunction strength,
                             Complex constant = 0.0);

    const GridPtr& grid() const noexcept { return grid_; }
    int modes() const noexcept { return modes_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    const Node& node(std::size_t k) const { return nodes_.at(k); }

    /// Same processes on a grid with every slot split into `factor` pieces.
    IntegralFamily refined(std::size_t factor) const;

    /// Operator form of node k on the slot space (dense oracle route).
    AdaptedStepProcess process(std::size_t k, const SpacePtr& space) const;

private:
    GridPtr grid_;
    int modes_;
    std::vector<Node> nodes_;
};

/// Gram history: entry k is the matrix <P_a(t_k) e(f)|P_b(t_k) e(g)> over all
/// family nodes a, b, for k = 0..n.
using GramHistory = std::vector<CMatrix>;

GramHistory gram_dense(const IntegralFamily& family, const SpacePtr& space, const StepFunction& f,
                       const StepFunction& g);
GramHistory gram_factorized(const IntegralFamily& family, int slot_cutoff, const StepFunction& f,
                            const StepFunction& g);
/// With drop_correction the nu_{N^dagger o N'} contribution is removed.
GramHistory gram_analytic(const IntegralFamily& family, const StepFunction& f,
                          const StepFunction& g, bool drop_correction = false);
GramHistory gram_continuum(const IntegralFamily& family, const StepFunction& f,
                           const StepFunction& g, bool drop_correction = false);

struct FirstFormulaReport {
    Complex lhs{0.0};
    Complex rhs{0.0};
    double abs_err = 0.0;
    double rel_err = 0.0;
    std::size_t n_slots = 0;
    double dt_max = 0.0;
    int slot_cutoff = 0;
    std::string engine;
};

struct SecondFormulaReport {
    Complex lhs{0.0};
    Complex rhs_three_term{0.0};
    Complex rhs_two_term{0.0};
    double abs_err = 0.0;
    double rel_err = 0.0;
    double abs_err_two_term = 0.0;
    std::size_t n_slots = 0;
    double dt_max = 0.0;
    int slot_cutoff = 0;
    std::string engine;
};

/// Dense LHS <e(f)|int L dLambda_N|e(g)> against sum_j nu_j Delta_j
/// <e(f)|L(t_j)|e(g)>, with the L matrix elements taken on the slot space.
FirstFormulaReport check_first_fundamental(const AdaptedStepProcess& l,
                                           const ito::StrengthFunction& n, const StepFunction& f,
                                           const StepFunction& g, double t);

/// Family form: L is node `integrand`; the right side uses exact untruncated
/// matrix elements. The left side is dense when the slot space fits within
/// `dim_limit`, factorized otherwise.
FirstFormulaReport check_first_fundamental(const IntegralFamily& family, std::size_t integrand,
                                           const ito::StrengthFunction& n, const StepFunction& f,
                                           const StepFunction& g, double t, int slot_cutoff,
                                           std::size_t dim_limit = kDefaultDimLimit);

/// <X(t) e(f)|X'(t) e(g)> with X = int L dLambda_N, X' = int L' dLambda_N',
/// against the time-integrated three-term right side and its two-term variant.
SecondFormulaReport check_second_fundamental(const IntegralFamily& family, std::size_t l1,
                                             const ito::StrengthFunction& n1, std::size_t l2,
                                             const ito::StrengthFunction& n2,
                                             const StepFunction& f, const StepFunction& g,
                                             double t, int slot_cutoff,
                                             std::size_t dim_limit = kDefaultDimLimit);

/// Oracle-engine form for class (iii) integrands.
SecondFormulaReport check_second_fundamental(const AdaptedStepProcess& l1,
                                             const ito::StrengthFunction& n1,
                                             const AdaptedStepProcess& l2,
                                             const ito::StrengthFunction& n2,
                                             const StepFunction& f, const StepFunction& g,
                                             double t);

struct RefinementRow {
    std::size_t n_slots = 0;
    double dt_max = 0.0;
    double err_three_term = 0.0;
    double err_two_term = 0.0;
};

struct RefinementStudy {
    std::vector<RefinementRow> rows;
    double slope_three_term = 0.0;
    double slope_two_term = 0.0;
};

/// Least-squares slope of log(err) against log(dt).
double loglog_slope(const std::vector<double>& dt, const std::vector<double>& err);

/// First formula with an iterated integrand: simple-process value of
/// <e(f)|int L dLambda_N|e(g)> on grids refined by 2^r (factorized engine)
/// against the continuum right side. err_two_term is not used (zero).
RefinementStudy first_formula_refinement(const IntegralFamily& family, std::size_t integrand,
                                         const ito::StrengthFunction& n, const StepFunction& f,
                                         const StepFunction& g, int slot_cutoff,
                                         std::size_t doublings);

/// Second formula: simple-process <X e(f)|X' e(g)> on refined grids against the
/// continuum three-term and two-term right sides.
RefinementStudy second_formula_refinement(const IntegralFamily& family, std::size_t l1,
                                          const ito::StrengthFunction& n1, std::size_t l2,
                                          const ito::StrengthFunction& n2, const StepFunction& f,
                                          const StepFunction& g, int slot_cutoff,
                                          std::size_t doublings);

}  // namespace qsb::qsc
