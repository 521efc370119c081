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

#include "qsb/qsc.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace qsb::qsc {

namespace {

// Slot-local matrix elements between exponential vectors: k00 = <e|e>,
// k01(b) = <e|dL_b e>, k10(a) = <dL_a e|e>, k11(a, b) = <dL_a e|dL_b e>.
struct SlotKernel {
    Complex k00{1.0};
    CVector k01;
    CVector k10;
    CMatrix k11;
};

using KernelFn = std::function<SlotKernel(std::size_t)>;

void require_family_data(const IntegralFamily& family, const StepFunction& f,
                         const StepFunction& g, const char* what) {
    require_same_grid(family.grid(), f.grid(), what);
    require_same_grid(family.grid(), g.grid(), what);
    if (f.modes() != family.modes() || g.modes() != family.modes()) {
        throw std::invalid_argument(std::string(what) + ": mode count mismatch");
    }
}

Complex offset_jump(const IntegralFamily::Node& node, std::size_t j) {
    return node.offset[j + 1] - node.offset[j];
}

// Column a is e_a + delta_a(j) e_0: the prefix combination multiplying the
// identity on slot j.
CMatrix jump_matrix(const IntegralFamily& family, std::size_t j) {
    const auto m = static_cast<Eigen::Index>(family.size());
    CMatrix c = CMatrix::Identity(m, m);
    for (Eigen::Index a = 1; a < m; ++a) {
        c(0, a) += offset_jump(family.node(static_cast<std::size_t>(a)), j);
    }
    return c;
}

// Column a is e_{q_a}: the prefix operator multiplying the increment on slot j.
CMatrix integrand_matrix(const IntegralFamily& family) {
    const auto m = static_cast<Eigen::Index>(family.size());
    CMatrix c = CMatrix::Zero(m, m);
    for (Eigen::Index a = 1; a < m; ++a) {
        const auto& node = family.node(static_cast<std::size_t>(a));
        if (node.integrand) c(static_cast<Eigen::Index>(*node.integrand), a) = 1.0;
    }
    return c;
}

CMatrix initial_gram(const IntegralFamily& family) {
    const auto m = static_cast<Eigen::Index>(family.size());
    CMatrix g(m, m);
    for (Eigen::Index a = 0; a < m; ++a) {
        for (Eigen::Index b = 0; b < m; ++b) {
            g(a, b) = std::conj(family.node(static_cast<std::size_t>(a)).offset[0]) *
                      family.node(static_cast<std::size_t>(b)).offset[0];
        }
    }
    return g;
}

// Prefix Gram recursion driven by a slot kernel, returned as full-horizon
// matrix elements.
GramHistory prefix_recursion(const IntegralFamily& family, const KernelFn& kernel) {
    const std::size_t n = family.grid()->slot_count();
    const CMatrix c1 = integrand_matrix(family);
    std::vector<CMatrix> prefix;
    std::vector<Complex> overlap;
    prefix.reserve(n + 1);
    overlap.reserve(n);
    prefix.push_back(initial_gram(family));
    for (std::size_t j = 0; j < n; ++j) {
        const SlotKernel k = kernel(j);
        const CMatrix c0 = jump_matrix(family, j);
        const CMatrix& g = prefix.back();
        CMatrix next = (c0.adjoint() * g * c0) * k.k00;
        next += (c0.adjoint() * g * c1) * k.k01.asDiagonal();
        next += k.k10.asDiagonal() * (c1.adjoint() * g * c0);
        next += (c1.adjoint() * g * c1).cwiseProduct(k.k11);
        prefix.push_back(std::move(next));
        overlap.push_back(k.k00);
    }
    GramHistory out(n + 1);
    Complex suffix = 1.0;
    for (std::size_t k = n + 1; k-- > 0;) {
        out[k] = prefix[k] * suffix;
        if (k > 0) suffix *= overlap[k - 1];
    }
    return out;
}

struct SlotNus {
    std::vector<Complex> nu;         // nu_{N_b}(f, g)
    std::vector<Complex> nu_dagger;  // nu_{N_a^dagger}(f, g)
    CMatrix nu_circ;                 // nu_{N_a^dagger o N_b}(f, g)
};

SlotNus slot_nus(const IntegralFamily& family, const StepFunction& f, const StepFunction& g,
                 std::size_t j) {
    const std::size_t m = family.size();
    SlotNus s{std::vector<Complex>(m, 0.0), std::vector<Complex>(m, 0.0),
              CMatrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m))};
    std::vector<std::optional<ito::ItoMatrix>> dag(m);
    for (std::size_t a = 0; a < m; ++a) {
        const auto& node = family.node(a);
        if (!node.strength) continue;
        const ito::ItoMatrix& n = node.strength->value(j);
        s.nu[a] = ito::nu(n, f.value(j), g.value(j));
        dag[a] = ito::dagger(n);
        s.nu_dagger[a] = ito::nu(*dag[a], f.value(j), g.value(j));
    }
    for (std::size_t a = 0; a < m; ++a) {
        if (!dag[a]) continue;
        for (std::size_t b = 0; b < m; ++b) {
            const auto& nb = family.node(b);
            if (!nb.strength) continue;
            s.nu_circ(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                ito::nu(ito::circ(*dag[a], nb.strength->value(j)), f.value(j), g.value(j));
        }
    }
    return s;
}

std::size_t checked_index(const GridPtr& grid, double t) { return grid->index_of(t); }

}  // namespace

CMatrix local_increment(const fock::BasisPtr& slot_basis, const ito::ItoMatrix& n, double width) {
    n.validate();
    if (n.modes() != slot_basis->modes()) {
        throw std::invalid_argument("local_increment: strength and slot basis differ in d");
    }
    const double root = std::sqrt(width);
    const auto dim = static_cast<Eigen::Index>(slot_basis->dim());
    CMatrix m = (n.alpha * width) * CMatrix::Identity(dim, dim);
    m += fock::creation(slot_basis, n.ket * root).matrix;
    m += fock::conservation(slot_basis, n.op).matrix;
    m += fock::annihilation(slot_basis, n.bra * root).matrix;
    return m;
}

GlobalOperator increment(const SpacePtr& space, std::size_t slot, const ito::ItoMatrix& n) {
    if (slot >= space->slot_count()) throw std::out_of_range("increment: slot index");
    return GlobalOperator::local(space, slot,
                                 local_increment(space->slot_basis(), n, space->grid()->width(slot)));
}

AdaptedStepProcess::AdaptedStepProcess(SpacePtr space, std::vector<GlobalOperator> values)
    : space_(std::move(space)), values_(std::move(values)) {
    if (values_.size() != space_->slot_count() + 1) {
        throw std::invalid_argument("AdaptedStepProcess: need one value per grid point");
    }
    for (std::size_t j = 0; j < values_.size(); ++j) {
        if (values_[j].space()->global_dim() != space_->global_dim()) {
            throw std::invalid_argument("AdaptedStepProcess: value on a different space");
        }
        if (values_[j].support_end() > j) {
            std::ostringstream os;
            os << "AdaptedStepProcess: value at t_" << j << " acts on slot "
               << values_[j].support_end() - 1 << " and is not adapted";
            throw std::invalid_argument(os.str());
        }
    }
}

AdaptedStepProcess AdaptedStepProcess::identity(SpacePtr space) {
    std::vector<GlobalOperator> v(space->slot_count() + 1, GlobalOperator::identity(space));
    return AdaptedStepProcess(std::move(space), std::move(v));
}

AdaptedStepProcess AdaptedStepProcess::scalar(SpacePtr space, const std::vector<Complex>& values) {
    if (values.size() != space->slot_count() + 1) {
        throw std::invalid_argument("AdaptedStepProcess::scalar: need one value per grid point");
    }
    std::vector<GlobalOperator> v;
    v.reserve(values.size());
    for (const Complex& x : values) v.push_back(x * GlobalOperator::identity(space));
    return AdaptedStepProcess(std::move(space), std::move(v));
}

AdaptedStepProcess AdaptedStepProcess::from_prefix_blocks(SpacePtr space,
                                                          const std::vector<CMatrix>& blocks) {
    if (blocks.size() != space->slot_count() + 1) {
        throw std::invalid_argument("AdaptedStepProcess::from_prefix_blocks: need one block per grid point");
    }
    std::vector<GlobalOperator> v;
    v.reserve(blocks.size());
    for (std::size_t j = 0; j < blocks.size(); ++j) {
        v.push_back(GlobalOperator::from_prefix_block(space, j, blocks[j]));
    }
    return AdaptedStepProcess(std::move(space), std::move(v));
}

AdaptedStepProcess AdaptedStepProcess::adjoint() const {
    std::vector<GlobalOperator> v;
    v.reserve(values_.size());
    for (const auto& x : values_) v.push_back(x.adjoint());
    return AdaptedStepProcess(space_, std::move(v));
}

GlobalOperator stochastic_integral(const AdaptedStepProcess& l, const ito::StrengthFunction& n,
                                   double t) {
    const SpacePtr& space = l.space();
    require_same_grid(space->grid(), n.grid(), "stochastic_integral");
    const std::size_t k = checked_index(space->grid(), t);
    GlobalOperator x = GlobalOperator::zero(space);
    for (std::size_t j = 0; j < k; ++j) x = x + l.value(j) * increment(space, j, n.value(j));
    return x;
}

AdaptedStepProcess integral_process(const AdaptedStepProcess& l, const ito::StrengthFunction& n) {
    const SpacePtr& space = l.space();
    require_same_grid(space->grid(), n.grid(), "integral_process");
    std::vector<GlobalOperator> v;
    v.reserve(space->slot_count() + 1);
    v.push_back(GlobalOperator::zero(space));
    for (std::size_t j = 0; j < space->slot_count(); ++j) {
        v.push_back(v.back() + l.value(j) * increment(space, j, n.value(j)));
    }
    return AdaptedStepProcess(space, std::move(v));
}

IntegralFamily::IntegralFamily(GridPtr grid, int modes) : grid_(std::move(grid)), modes_(modes) {
    if (!grid_) throw std::invalid_argument("IntegralFamily: null grid");
    if (modes_ < 1) throw std::invalid_argument("IntegralFamily: need d >= 1");
    nodes_.push_back(Node{std::vector<Complex>(grid_->slot_count() + 1, Complex(1.0)), {}, {}});
}

std::size_t IntegralFamily::add_scalar(std::vector<Complex> values) {
    if (values.size() != grid_->slot_count() + 1) {
        throw std::invalid_argument("IntegralFamily::add_scalar: need one value per grid point");
    }
    nodes_.push_back(Node{std::move(values), {}, {}});
    return nodes_.size() - 1;
}

std::size_t IntegralFamily::add_integral(std::size_t integrand, ito::StrengthFunction strength,
                                         Complex constant) {
    if (integrand >= nodes_.size()) {
        throw std::out_of_range("IntegralFamily::add_integral: integrand must be an earlier node");
    }
    require_same_grid(grid_, strength.grid(), "IntegralFamily::add_integral");
    if (strength.modes() != modes_) {
        throw std::invalid_argument("IntegralFamily::add_integral: strength has the wrong d");
    }
    nodes_.push_back(Node{std::vector<Complex>(grid_->slot_count() + 1, constant), integrand,
                          std::move(strength)});
    return nodes_.size() - 1;
}

IntegralFamily IntegralFamily::refined(std::size_t factor) const {
    IntegralFamily out(make_grid(grid_->refine(factor)), modes_);
    const std::size_t n = grid_->slot_count();
    for (std::size_t k = 1; k < nodes_.size(); ++k) {
        const Node& src = nodes_[k];
        std::vector<Complex> offset;
        offset.reserve(n * factor + 1);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t r = 0; r < factor; ++r) offset.push_back(src.offset[j]);
        }
        offset.push_back(src.offset[n]);
        Node node{std::move(offset), src.integrand, {}};
        if (src.strength) node.strength = src.strength->refined(factor, out.grid_);
        out.nodes_.push_back(std::move(node));
    }
    return out;
}

AdaptedStepProcess IntegralFamily::process(std::size_t k, const SpacePtr& space) const {
    require_same_grid(grid_, space->grid(), "IntegralFamily::process");
    if (space->modes() != modes_) throw std::invalid_argument("IntegralFamily::process: d mismatch");
    const Node& node = nodes_.at(k);
    if (k == kIdentity) return AdaptedStepProcess::identity(space);
    AdaptedStepProcess base = AdaptedStepProcess::scalar(space, node.offset);
    if (!node.integrand) return base;
    const AdaptedStepProcess integral = integral_process(process(*node.integrand, space), *node.strength);
    std::vector<GlobalOperator> v;
    v.reserve(base.size());
    for (std::size_t j = 0; j < base.size(); ++j) v.push_back(base.value(j) + integral.value(j));
    return AdaptedStepProcess(space, std::move(v));
}

GramHistory gram_dense(const IntegralFamily& family, const SpacePtr& space, const StepFunction& f,
                       const StepFunction& g) {
    require_family_data(family, f, g, "gram_dense");
    require_same_grid(family.grid(), space->grid(), "gram_dense");
    const std::size_t m = family.size();
    const std::size_t n = family.grid()->slot_count();
    const CVector ef = embed_exponential(*space, f);
    const CVector eg = embed_exponential(*space, g);
    std::vector<CVector> z(m);
    std::vector<CVector> w(m);
    for (std::size_t a = 0; a < m; ++a) {
        z[a] = family.node(a).offset[0] * ef;
        w[a] = family.node(a).offset[0] * eg;
    }
    auto gram = [&]() {
        CMatrix out(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
        for (std::size_t a = 0; a < m; ++a) {
            for (std::size_t b = 0; b < m; ++b) {
                out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = z[a].dot(w[b]);
            }
        }
        return out;
    };
    GramHistory history;
    history.reserve(n + 1);
    history.push_back(gram());
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<CVector> z_next(m);
        std::vector<CVector> w_next(m);
        z_next[0] = z[0];
        w_next[0] = w[0];
        for (std::size_t a = 1; a < m; ++a) {
            const auto& node = family.node(a);
            const Complex delta = offset_jump(node, j);
            z_next[a] = z[a] + delta * ef;
            w_next[a] = w[a] + delta * eg;
            if (node.integrand) {
                const CMatrix d = local_increment(space->slot_basis(), node.strength->value(j),
                                                  family.grid()->width(j));
                z_next[a] += apply_local(*space, j, d, z[*node.integrand]);
                w_next[a] += apply_local(*space, j, d, w[*node.integrand]);
            }
        }
        z = std::move(z_next);
        w = std::move(w_next);
        history.push_back(gram());
    }
    return history;
}

GramHistory gram_factorized(const IntegralFamily& family, int slot_cutoff, const StepFunction& f,
                            const StepFunction& g) {
    require_family_data(family, f, g, "gram_factorized");
    const fock::BasisPtr basis = fock::make_basis(family.modes(), slot_cutoff);
    const auto m = static_cast<Eigen::Index>(family.size());
    KernelFn kernel = [&](std::size_t j) {
        const double width = family.grid()->width(j);
        const CVector ef = fock::exponential_vector(basis, slot_argument(f, j)).coeffs;
        const CVector eg = fock::exponential_vector(basis, slot_argument(g, j)).coeffs;
        SlotKernel k{ef.dot(eg), CVector::Zero(m), CVector::Zero(m), CMatrix::Zero(m, m)};
        std::vector<CVector> df(static_cast<std::size_t>(m));
        std::vector<CVector> dg(static_cast<std::size_t>(m));
        for (Eigen::Index a = 1; a < m; ++a) {
            const auto& node = family.node(static_cast<std::size_t>(a));
            if (!node.strength) continue;
            const CMatrix d = local_increment(basis, node.strength->value(j), width);
            df[static_cast<std::size_t>(a)] = d * ef;
            dg[static_cast<std::size_t>(a)] = d * eg;
            k.k01(a) = ef.dot(dg[static_cast<std::size_t>(a)]);
            k.k10(a) = df[static_cast<std::size_t>(a)].dot(eg);
        }
        for (Eigen::Index a = 1; a < m; ++a) {
            if (df[static_cast<std::size_t>(a)].size() == 0) continue;
            for (Eigen::Index b = 1; b < m; ++b) {
                if (dg[static_cast<std::size_t>(b)].size() == 0) continue;
                k.k11(a, b) = df[static_cast<std::size_t>(a)].dot(dg[static_cast<std::size_t>(b)]);
            }
        }
        return k;
    };
    return prefix_recursion(family, kernel);
}

GramHistory gram_analytic(const IntegralFamily& family, const StepFunction& f,
                          const StepFunction& g, bool drop_correction) {
    require_family_data(family, f, g, "gram_analytic");
    KernelFn kernel = [&](std::size_t j) {
        const double dt = family.grid()->width(j);
        const Complex e = std::exp(f.value(j).dot(g.value(j)) * dt);
        const SlotNus s = slot_nus(family, f, g, j);
        const auto m = static_cast<Eigen::Index>(family.size());
        SlotKernel k{e, CVector::Zero(m), CVector::Zero(m), CMatrix::Zero(m, m)};
        for (Eigen::Index a = 0; a < m; ++a) {
            k.k01(a) = s.nu[static_cast<std::size_t>(a)] * dt * e;
            k.k10(a) = s.nu_dagger[static_cast<std::size_t>(a)] * dt * e;
        }
        for (Eigen::Index a = 0; a < m; ++a) {
            for (Eigen::Index b = 0; b < m; ++b) {
                Complex v = dt * dt * s.nu_dagger[static_cast<std::size_t>(a)] *
                            s.nu[static_cast<std::size_t>(b)];
                if (!drop_correction) v += dt * s.nu_circ(a, b);
                k.k11(a, b) = v * e;
            }
        }
        return k;
    };
    return prefix_recursion(family, kernel);
}

GramHistory gram_continuum(const IntegralFamily& family, const StepFunction& f,
                           const StepFunction& g, bool drop_correction) {
    require_family_data(family, f, g, "gram_continuum");
    const std::size_t n = family.grid()->slot_count();
    const auto m = static_cast<Eigen::Index>(family.size());
    auto idx = [m](Eigen::Index a, Eigen::Index b) { return a + m * b; };
    std::vector<CMatrix> prefix;
    std::vector<Complex> overlap;
    prefix.push_back(initial_gram(family));
    for (std::size_t j = 0; j < n; ++j) {
        const double dt = family.grid()->width(j);
        const Complex x = f.value(j).dot(g.value(j));
        const SlotNus s = slot_nus(family, f, g, j);
        CMatrix rate = CMatrix::Zero(m * m, m * m);
        for (Eigen::Index a = 0; a < m; ++a) {
            const auto& na = family.node(static_cast<std::size_t>(a));
            for (Eigen::Index b = 0; b < m; ++b) {
                const auto& nb = family.node(static_cast<std::size_t>(b));
                const Eigen::Index row = idx(a, b);
                rate(row, row) += x;
                if (na.integrand) {
                    const auto qa = static_cast<Eigen::Index>(*na.integrand);
                    rate(row, idx(qa, b)) += s.nu_dagger[static_cast<std::size_t>(a)];
                }
                if (nb.integrand) {
                    const auto qb = static_cast<Eigen::Index>(*nb.integrand);
                    rate(row, idx(a, qb)) += s.nu[static_cast<std::size_t>(b)];
                }
                if (na.integrand && nb.integrand && !drop_correction) {
                    const auto qa = static_cast<Eigen::Index>(*na.integrand);
                    const auto qb = static_cast<Eigen::Index>(*nb.integrand);
                    rate(row, idx(qa, qb)) += s.nu_circ(a, b);
                }
            }
        }
        const CMatrix& g0 = prefix.back();
        const CVector v0 = Eigen::Map<const CVector>(g0.data(), m * m);
        const CVector v1 = numerics::mat_exp(rate * dt) * v0;
        const CMatrix g1 = Eigen::Map<const CMatrix>(v1.data(), m, m);
        const CMatrix c0 = jump_matrix(family, j);
        prefix.push_back(c0.adjoint() * g1 * c0);
        overlap.push_back(std::exp(x * dt));
    }
    GramHistory out(n + 1);
    Complex suffix = 1.0;
    for (std::size_t k = n + 1; k-- > 0;) {
        out[k] = prefix[k] * suffix;
        if (k > 0) suffix *= overlap[k - 1];
    }
    return out;
}

namespace {

void finish(FirstFormulaReport& r) {
    r.abs_err = std::abs(r.lhs - r.rhs);
    r.rel_err = r.abs_err / std::max(std::abs(r.rhs), 1e-300);
}

void finish(SecondFormulaReport& r) {
    r.abs_err = std::abs(r.lhs - r.rhs_three_term);
    r.rel_err = r.abs_err / std::max(std::abs(r.rhs_three_term), 1e-300);
    r.abs_err_two_term = std::abs(r.lhs - r.rhs_two_term);
}

std::optional<SpacePtr> try_space(const IntegralFamily& family, int slot_cutoff,
                                  std::size_t dim_limit) {
    try {
        return make_space(family.grid(), family.modes(), slot_cutoff, dim_limit);
    } catch (const DimensionLimitError&) {
        return std::nullopt;
    }
}

}  // namespace

FirstFormulaReport check_first_fundamental(const AdaptedStepProcess& l,
                                           const ito::StrengthFunction& n, const StepFunction& f,
                                           const StepFunction& g, double t) {
    const SpacePtr& space = l.space();
    require_same_grid(space->grid(), n.grid(), "check_first_fundamental");
    require_same_grid(space->grid(), f.grid(), "check_first_fundamental");
    require_same_grid(space->grid(), g.grid(), "check_first_fundamental");
    const std::size_t k = checked_index(space->grid(), t);
    const CVector ef = embed_exponential(*space, f);
    const CVector eg = embed_exponential(*space, g);
    FirstFormulaReport r;
    r.lhs = ef.dot(stochastic_integral(l, n, t).apply(eg));
    for (std::size_t j = 0; j < k; ++j) {
        r.rhs += ito::nu(n, f, g, j) * space->grid()->width(j) * ef.dot(l.value(j).apply(eg));
    }
    r.n_slots = space->slot_count();
    r.dt_max = space->grid()->max_width();
    r.slot_cutoff = space->slot_cutoff();
    r.engine = "dense";
    finish(r);
    return r;
}

FirstFormulaReport check_first_fundamental(const IntegralFamily& family, std::size_t integrand,
                                           const ito::StrengthFunction& n, const StepFunction& f,
                                           const StepFunction& g, double t, int slot_cutoff,
                                           std::size_t dim_limit) {
    require_family_data(family, f, g, "check_first_fundamental");
    const std::size_t k = checked_index(family.grid(), t);
    IntegralFamily extended = family;
    const std::size_t x = extended.add_integral(integrand, n);
    const GramHistory exact = gram_analytic(family, f, g);

    FirstFormulaReport r;
    for (std::size_t j = 0; j < k; ++j) {
        r.rhs += ito::nu(n, f, g, j) * family.grid()->width(j) *
                 exact[j](0, static_cast<Eigen::Index>(integrand));
    }
    if (auto space = try_space(family, slot_cutoff, dim_limit)) {
        const AdaptedStepProcess lp = family.process(integrand, *space);
        const CVector ef = embed_exponential(**space, f);
        const CVector eg = embed_exponential(**space, g);
        r.lhs = ef.dot(stochastic_integral(lp, n, t).apply(eg));
        r.engine = "dense";
    } else {
        r.lhs = gram_factorized(extended, slot_cutoff, f, g)[k](0, static_cast<Eigen::Index>(x));
        r.engine = "factorized";
    }
    r.n_slots = family.grid()->slot_count();
    r.dt_max = family.grid()->max_width();
    r.slot_cutoff = slot_cutoff;
    finish(r);
    return r;
}

SecondFormulaReport check_second_fundamental(const IntegralFamily& family, std::size_t l1,
                                             const ito::StrengthFunction& n1, std::size_t l2,
                                             const ito::StrengthFunction& n2,
                                             const StepFunction& f, const StepFunction& g,
                                             double t, int slot_cutoff, std::size_t dim_limit) {
    require_family_data(family, f, g, "check_second_fundamental");
    const std::size_t k = checked_index(family.grid(), t);
    IntegralFamily extended = family;
    const std::size_t x1 = extended.add_integral(l1, n1);
    const std::size_t x2 = extended.add_integral(l2, n2);
    const GramHistory exact = gram_analytic(extended, f, g);
    const auto i1 = static_cast<Eigen::Index>(l1);
    const auto i2 = static_cast<Eigen::Index>(l2);
    const auto j1 = static_cast<Eigen::Index>(x1);
    const auto j2 = static_cast<Eigen::Index>(x2);

    SecondFormulaReport r;
    for (std::size_t j = 0; j < k; ++j) {
        const double dt = family.grid()->width(j);
        const ito::ItoMatrix& a = n1.value(j);
        const ito::ItoMatrix& b = n2.value(j);
        const Complex nu_dag = ito::nu(ito::dagger(a), f.value(j), g.value(j));
        const Complex nu_b = ito::nu(b, f.value(j), g.value(j));
        const Complex nu_circ = ito::nu(ito::circ(ito::dagger(a), b), f.value(j), g.value(j));
        const CMatrix& h = exact[j];
        const Complex two = dt * (nu_dag * h(i1, j2) + nu_b * h(j1, i2)) +
                            dt * dt * nu_dag * nu_b * h(i1, i2);
        r.rhs_two_term += two;
        r.rhs_three_term += two + dt * nu_circ * h(i1, i2);
    }
    if (auto space = try_space(family, slot_cutoff, dim_limit)) {
        const AdaptedStepProcess p1 = extended.process(x1, *space);
        const AdaptedStepProcess p2 = extended.process(x2, *space);
        const CVector ef = embed_exponential(**space, f);
        const CVector eg = embed_exponential(**space, g);
        r.lhs = p1.value(k).apply(ef).dot(p2.value(k).apply(eg));
        r.engine = "dense";
    } else {
        r.lhs = gram_factorized(extended, slot_cutoff, f, g)[k](j1, j2);
        r.engine = "factorized";
    }
    r.n_slots = family.grid()->slot_count();
    r.dt_max = family.grid()->max_width();
    r.slot_cutoff = slot_cutoff;
    finish(r);
    return r;
}

SecondFormulaReport check_second_fundamental(const AdaptedStepProcess& l1,
                                             const ito::StrengthFunction& n1,
                                             const AdaptedStepProcess& l2,
                                             const ito::StrengthFunction& n2,
                                             const StepFunction& f, const StepFunction& g,
                                             double t) {
    const SpacePtr& space = l1.space();
    require_same_grid(space->grid(), l2.space()->grid(), "check_second_fundamental");
    require_same_grid(space->grid(), f.grid(), "check_second_fundamental");
    const std::size_t k = checked_index(space->grid(), t);
    const CVector ef = embed_exponential(*space, f);
    const CVector eg = embed_exponential(*space, g);
    CVector x1f = CVector::Zero(ef.size());
    CVector x2g = CVector::Zero(eg.size());

    SecondFormulaReport r;
    for (std::size_t j = 0; j < k; ++j) {
        const double dt = space->grid()->width(j);
        const ito::ItoMatrix& a = n1.value(j);
        const ito::ItoMatrix& b = n2.value(j);
        const Complex nu_dag = ito::nu(ito::dagger(a), f.value(j), g.value(j));
        const Complex nu_b = ito::nu(b, f.value(j), g.value(j));
        const Complex nu_circ = ito::nu(ito::circ(ito::dagger(a), b), f.value(j), g.value(j));
        const CVector l1f = l1.value(j).apply(ef);
        const CVector l2g = l2.value(j).apply(eg);
        const Complex h_ll = l1f.dot(l2g);
        const Complex two = dt * (nu_dag * l1f.dot(x2g) + nu_b * x1f.dot(l2g)) +
                            dt * dt * nu_dag * nu_b * h_ll;
        r.rhs_two_term += two;
        r.rhs_three_term += two + dt * nu_circ * h_ll;
        x1f += l1.value(j).apply(increment(space, j, a).apply(ef));
        x2g += l2.value(j).apply(increment(space, j, b).apply(eg));
    }
    r.lhs = x1f.dot(x2g);
    r.n_slots = space->slot_count();
    r.dt_max = space->grid()->max_width();
    r.slot_cutoff = space->slot_cutoff();
    r.engine = "dense";
    finish(r);
    return r;
}

double loglog_slope(const std::vector<double>& dt, const std::vector<double>& err) {
    if (dt.size() != err.size() || dt.size() < 2) {
        throw std::invalid_argument("loglog_slope: need at least two matched points");
    }
    const double n = static_cast<double>(dt.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < dt.size(); ++i) {
        const double x = std::log(dt[i]);
        const double y = std::log(std::max(err[i], 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

RefinementStudy first_formula_refinement(const IntegralFamily& family, std::size_t integrand,
                                         const ito::StrengthFunction& n, const StepFunction& f,
                                         const StepFunction& g, int slot_cutoff,
                                         std::size_t doublings) {
    require_family_data(family, f, g, "first_formula_refinement");
    IntegralFamily base = family;
    const std::size_t x = base.add_integral(integrand, n);
    const auto ix = static_cast<Eigen::Index>(x);
    const Complex reference = gram_continuum(base, f, g).back()(0, ix);

    RefinementStudy study;
    std::vector<double> dts;
    std::vector<double> errs;
    for (std::size_t r = 0; r <= doublings; ++r) {
        const std::size_t factor = std::size_t{1} << r;
        const IntegralFamily fine = base.refined(factor);
        const StepFunction ff = f.refined(factor, fine.grid());
        const StepFunction gf = g.refined(factor, fine.grid());
        const Complex lhs = gram_factorized(fine, slot_cutoff, ff, gf).back()(0, ix);
        RefinementRow row{fine.grid()->slot_count(), fine.grid()->max_width(),
                          std::abs(lhs - reference), 0.0};
        dts.push_back(row.dt_max);
        errs.push_back(row.err_three_term);
        study.rows.push_back(row);
    }
    study.slope_three_term = loglog_slope(dts, errs);
    return study;
}

RefinementStudy second_formula_refinement(const IntegralFamily& family, std::size_t l1,
                                          const ito::StrengthFunction& n1, std::size_t l2,
                                          const ito::StrengthFunction& n2, const StepFunction& f,
                                          const StepFunction& g, int slot_cutoff,
                                          std::size_t doublings) {
    require_family_data(family, f, g, "second_formula_refinement");
    IntegralFamily base = family;
    const auto x1 = static_cast<Eigen::Index>(base.add_integral(l1, n1));
    const auto x2 = static_cast<Eigen::Index>(base.add_integral(l2, n2));
    const Complex three = gram_continuum(base, f, g, false).back()(x1, x2);
    const Complex two = gram_continuum(base, f, g, true).back()(x1, x2);

    RefinementStudy study;
    std::vector<double> dts;
    std::vector<double> e3;
    std::vector<double> e2;
    for (std::size_t r = 0; r <= doublings; ++r) {
        const std::size_t factor = std::size_t{1} << r;
        const IntegralFamily fine = base.refined(factor);
        const StepFunction ff = f.refined(factor, fine.grid());
        const StepFunction gf = g.refined(factor, fine.grid());
        const Complex lhs = gram_factorized(fine, slot_cutoff, ff, gf).back()(x1, x2);
        RefinementRow row{fine.grid()->slot_count(), fine.grid()->max_width(),
                          std::abs(lhs - three), std::abs(lhs - two)};
        dts.push_back(row.dt_max);
        e3.push_back(row.err_three_term);
        e2.push_back(row.err_two_term);
        study.rows.push_back(row);
    }
    study.slope_three_term = loglog_slope(dts, e3);
    study.slope_two_term = loglog_slope(dts, e2);
    return study;
}

}  // namespace qsb::qsc
