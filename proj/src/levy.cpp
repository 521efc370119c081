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

#include "qsb/levy.hpp"

#include "qsb/random.hpp"
#include "qsb/slot_operator.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace qsb::levy {

namespace {

void require_path_data(const StepFunction& f, const StepFunction& g, const EuclideanPath& path,
                       const char* what) {
    require_same_grid(path.grid(), f.grid(), what);
    require_same_grid(path.grid(), g.grid(), what);
    if (f.modes() != path.modes() || g.modes() != path.modes()) {
        throw std::invalid_argument(std::string(what) + ": mode count mismatch");
    }
}

std::pair<std::size_t, std::size_t> window(const GridPtr& grid, double a, double b) {
    const std::size_t ia = grid->index_of(a);
    const std::size_t ib = grid->index_of(b);
    if (ia >= ib) throw std::invalid_argument("Weyl window: need a < b");
    return {ia, ib};
}

// e^{i theta} - 1 without cancellation for small theta.
Complex expm1_i(double theta) {
    const double s = std::sin(0.5 * theta);
    return {-2.0 * s * s, std::sin(theta)};
}

// (e^{ixy} - 1 - ixy) / y^2 with the y -> 0 limit -x^2/2.
Complex compensated_kernel(double x, double y) {
    if (std::abs(y) < kZeroJump) return -0.5 * x * x;
    const Complex z(0.0, x * y);
    Complex phi2;
    if (std::abs(z) < 1e-3) {
        phi2 = 0.5 + z / 6.0 + z * z / 24.0 + z * z * z / 120.0;
    } else {
        phi2 = (std::exp(z) - 1.0 - z) / (z * z);
    }
    return -x * x * phi2;
}

Complex slot_exponent_sum(double x, double t, const LevyStrengthData& data, bool compensated) {
    const std::size_t k = data.grid()->index_of(t);
    const auto atoms = levy_atoms(data);
    Complex s = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        Complex slot = 0.0;
        for (const Atom& a : atoms[j]) {
            slot += a.weight * (compensated ? compensated_kernel(x, a.jump) : expm1_i(x * a.jump));
        }
        s += data.grid()->width(j) * slot;
    }
    return s;
}

void require_operator_inputs(const fock::BasisPtr& basis, const CVector& psi, const CMatrix& h,
                             double t, const char* what) {
    if (basis->cutoff() < kMinOperatorCutoff) {
        std::ostringstream os;
        os << what << ": Fock cutoff " << basis->cutoff() << " is below the required "
           << kMinOperatorCutoff;
        throw std::invalid_argument(os.str());
    }
    if (psi.size() != basis->modes() || h.rows() != basis->modes() || h.cols() != basis->modes()) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch");
    }
    const double defect = numerics::hermitian_defect(h);
    if (defect > default_tolerances().hermitian) {
        std::ostringstream os;
        os << what << ": H is not Hermitian (max |H - H^dagger| = " << defect << " > "
           << default_tolerances().hermitian << ")";
        throw std::invalid_argument(os.str());
    }
    if (!(t >= 0.0)) throw std::invalid_argument(std::string(what) + ": need t >= 0");
}

long long poisson_count(rng::CounterEngine& engine, double mean) {
    if (mean <= 0.0) return 0;
    std::poisson_distribution<long long> dist(mean);
    return dist(engine);
}

}  // namespace

EuclideanPath::EuclideanPath(GridPtr grid, std::vector<CVector> phi, std::vector<CMatrix> unitary)
    : grid_(std::move(grid)), modes_(0), phi_(std::move(phi)), unitary_(std::move(unitary)) {
    if (!grid_) throw std::invalid_argument("EuclideanPath: null grid");
    if (phi_.size() != grid_->slot_count() || unitary_.size() != grid_->slot_count()) {
        throw std::invalid_argument("EuclideanPath: need one (phi, U) per slot");
    }
    modes_ = static_cast<int>(phi_.front().size());
    for (std::size_t j = 0; j < phi_.size(); ++j) {
        if (phi_[j].size() != modes_ || unitary_[j].rows() != modes_ || unitary_[j].cols() != modes_) {
            throw std::invalid_argument("EuclideanPath: inconsistent dimensions");
        }
        const double defect = numerics::unitary_defect(unitary_[j]);
        if (defect > default_tolerances().unitary) {
            std::ostringstream os;
            os << "EuclideanPath: U on slot " << j << " is not unitary (defect " << defect << " > "
               << default_tolerances().unitary << ")";
            throw std::invalid_argument(os.str());
        }
    }
}

EuclideanPath EuclideanPath::refined(std::size_t factor, GridPtr fine_grid) const {
    if (fine_grid->slot_count() != grid_->slot_count() * factor) {
        throw std::invalid_argument("EuclideanPath::refined: fine grid has the wrong slot count");
    }
    std::vector<CVector> phi;
    std::vector<CMatrix> u;
    for (std::size_t j = 0; j < phi_.size(); ++j) {
        for (std::size_t r = 0; r < factor; ++r) {
            phi.push_back(phi_[j]);
            u.push_back(unitary_[j]);
        }
    }
    return EuclideanPath(std::move(fine_grid), std::move(phi), std::move(u));
}

Complex weyl_matrix_element(const StepFunction& f, const StepFunction& g, double a, double b,
                            const EuclideanPath& path) {
    require_path_data(f, g, path, "weyl_matrix_element");
    const auto [ia, ib] = window(path.grid(), a, b);
    Complex exponent = 0.0;
    for (std::size_t j = 0; j < path.grid()->slot_count(); ++j) {
        const double dt = path.grid()->width(j);
        const CVector& fj = f.value(j);
        const CVector& gj = g.value(j);
        if (j >= ia && j < ib) {
            const CVector& phi = path.phi(j);
            const CVector ug = path.unitary(j) * gj;
            exponent += dt * (-0.5 * phi.squaredNorm() + fj.dot(phi) + fj.dot(ug) - phi.dot(ug));
        } else {
            exponent += dt * fj.dot(gj);
        }
    }
    return std::exp(exponent);
}

ito::StrengthFunction weyl_generator(const EuclideanPath& path) {
    std::vector<ito::ItoMatrix> v;
    v.reserve(path.grid()->slot_count());
    const auto d = static_cast<Eigen::Index>(path.modes());
    for (std::size_t j = 0; j < path.grid()->slot_count(); ++j) {
        const CVector& phi = path.phi(j);
        const CMatrix& u = path.unitary(j);
        ito::ItoMatrix n;
        n.alpha = -0.5 * phi.squaredNorm();
        // The row -<phi|U is stored as the vector -(U^dagger phi).
        n.bra = -(u.adjoint() * phi);
        n.ket = phi;
        n.op = u - CMatrix::Identity(d, d);
        v.push_back(std::move(n));
    }
    return ito::StrengthFunction(path.grid(), std::move(v));
}

std::vector<Complex> solve_weyl_qsde(const StepFunction& f, const StepFunction& g,
                                     const EuclideanPath& path, QsdeScheme scheme) {
    require_path_data(f, g, path, "solve_weyl_qsde");
    const ito::StrengthFunction n = weyl_generator(path);
    std::vector<Complex> m;
    m.reserve(path.grid()->slot_count() + 1);
    m.push_back(std::exp(l2_inner(f, g)));
    for (std::size_t j = 0; j < path.grid()->slot_count(); ++j) {
        const Complex rate = ito::nu(n, f, g, j) * path.grid()->width(j);
        m.push_back(m.back() * (scheme == QsdeScheme::exact ? std::exp(rate) : 1.0 + rate));
    }
    return m;
}

Complex weyl_dense_element(const StepFunction& f, const StepFunction& g, double a, double b,
                           const EuclideanPath& path, int slot_cutoff) {
    require_path_data(f, g, path, "weyl_dense_element");
    const auto [ia, ib] = window(path.grid(), a, b);
    const qsc::SpacePtr space = qsc::make_space(path.grid(), path.modes(), slot_cutoff);
    CVector v = qsc::embed_exponential(*space, g);
    for (std::size_t j = ia; j < ib; ++j) {
        const double root = std::sqrt(path.grid()->width(j));
        const fock::FockOperator w =
            fock::weyl_pair(space->slot_basis(), path.phi(j) * root, path.unitary(j));
        v = qsc::apply_local(*space, j, w.matrix, v);
    }
    return qsc::embed_exponential(*space, f).dot(v);
}

LevyStrengthData::LevyStrengthData(GridPtr grid, std::vector<CVector> psi, std::vector<CMatrix> h)
    : grid_(std::move(grid)), modes_(0), psi_(std::move(psi)), h_(std::move(h)) {
    if (!grid_) throw std::invalid_argument("LevyStrengthData: null grid");
    if (psi_.size() != grid_->slot_count() || h_.size() != grid_->slot_count()) {
        throw std::invalid_argument("LevyStrengthData: need one (psi, H) per slot");
    }
    modes_ = static_cast<int>(psi_.front().size());
    for (std::size_t j = 0; j < psi_.size(); ++j) {
        if (psi_[j].size() != modes_ || h_[j].rows() != modes_ || h_[j].cols() != modes_) {
            throw std::invalid_argument("LevyStrengthData: inconsistent dimensions");
        }
        const double defect = numerics::hermitian_defect(h_[j]);
        if (defect > default_tolerances().hermitian) {
            std::ostringstream os;
            os << "LevyStrengthData: H on slot " << j << " is not Hermitian (defect " << defect
               << " > " << default_tolerances().hermitian << ")";
            throw std::invalid_argument(os.str());
        }
    }
}

LevyStrengthData LevyStrengthData::constant(GridPtr grid, const CVector& psi, const CMatrix& h) {
    const std::size_t n = grid->slot_count();
    return LevyStrengthData(std::move(grid), std::vector<CVector>(n, psi), std::vector<CMatrix>(n, h));
}

std::vector<std::vector<Atom>> levy_atoms(const LevyStrengthData& data) {
    std::vector<std::vector<Atom>> out;
    out.reserve(data.grid()->slot_count());
    for (std::size_t j = 0; j < data.grid()->slot_count(); ++j) {
        const auto eig = numerics::hermitian_eig(data.h(j));
        std::vector<Atom> atoms;
        for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
            const double w = std::norm(eig.vectors.col(k).dot(data.psi(j)));
            atoms.push_back({eig.values(k), w});
        }
        out.push_back(std::move(atoms));
    }
    return out;
}

Complex type1_cf(double x, double t, const LevyStrengthData& data) {
    return std::exp(slot_exponent_sum(x, t, data, false));
}

Complex type2_cf(double x, double t, const LevyStrengthData& data) {
    return std::exp(slot_exponent_sum(x, t, data, true));
}

ito::StrengthFunction type1_generator(double x, const LevyStrengthData& data) {
    std::vector<ito::ItoMatrix> v;
    v.reserve(data.grid()->slot_count());
    const auto d = static_cast<Eigen::Index>(data.modes());
    for (std::size_t j = 0; j < data.grid()->slot_count(); ++j) {
        const CMatrix shift = numerics::mat_exp(kI * x * data.h(j)) - CMatrix::Identity(d, d);
        const CVector& psi = data.psi(j);
        ito::ItoMatrix n;
        n.alpha = psi.dot(shift * psi);
        n.bra = shift.adjoint() * psi;
        n.ket = shift * psi;
        n.op = shift;
        v.push_back(std::move(n));
    }
    return ito::StrengthFunction(data.grid(), std::move(v));
}

Complex vacuum_solution(const ito::StrengthFunction& n, double t) {
    const std::size_t k = n.grid()->index_of(t);
    const CVector zero = CVector::Zero(n.modes());
    Complex s = 0.0;
    for (std::size_t j = 0; j < k; ++j) s += ito::nu(n.value(j), zero, zero) * n.grid()->width(j);
    return std::exp(s);
}

fock::FockOperator bounded_Z_operator(const fock::BasisPtr& basis, const CVector& psi,
                                      const CMatrix& h, double t) {
    require_operator_inputs(basis, psi, h, t, "bounded_Z_operator");
    const CVector hpsi = h * psi * std::sqrt(t);
    const Complex scalar = psi.dot(h * psi) * t;
    return scalar * fock::identity(basis) + fock::creation(basis, hpsi) +
           fock::conservation(basis, h) + fock::annihilation(basis, hpsi);
}

fock::FockOperator bounded_Zprime_operator(const fock::BasisPtr& basis, const CVector& psi,
                                           const CMatrix& h, double t) {
    require_operator_inputs(basis, psi, h, t, "bounded_Zprime_operator");
    const CVector u = psi * std::sqrt(t);
    return fock::creation(basis, u) + fock::conservation(basis, h) + fock::annihilation(basis, u);
}

Complex vacuum_cf(const fock::FockOperator& z, double x) {
    return numerics::mat_exp(kI * x * z.matrix)(0, 0);
}

double sample_type1(const LevyStrengthData& data, double t, std::uint64_t seed) {
    const std::size_t k = data.grid()->index_of(t);
    const auto atoms = levy_atoms(data);
    rng::CounterEngine engine(seed);
    double s = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        const double dt = data.grid()->width(j);
        for (const Atom& a : atoms[j]) {
            if (a.jump == 0.0) continue;
            s += static_cast<double>(poisson_count(engine, a.weight * dt)) * a.jump;
        }
    }
    return s;
}

double sample_type2(const LevyStrengthData& data, double t, std::uint64_t seed) {
    const std::size_t k = data.grid()->index_of(t);
    const auto atoms = levy_atoms(data);
    rng::CounterEngine engine(seed);
    double s = 0.0;
    double variance = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        const double dt = data.grid()->width(j);
        for (const Atom& a : atoms[j]) {
            if (a.weight <= 0.0) continue;
            if (std::abs(a.jump) < kZeroJump) {
                variance += a.weight * dt;
                continue;
            }
            const double rate = a.weight / (a.jump * a.jump);
            s += static_cast<double>(poisson_count(engine, rate * dt)) * a.jump;
            s -= a.weight * dt / a.jump;
        }
    }
    if (variance > 0.0) s += std::sqrt(variance) * engine.normal();
    return s;
}

std::vector<double> sample_batch(SampleKind kind, const LevyStrengthData& data, double t,
                                 std::size_t n, std::uint64_t root_seed) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t seed = rng::derive(root_seed, static_cast<std::uint64_t>(i));
        out[i] = kind == SampleKind::type1 ? sample_type1(data, t, seed) : sample_type2(data, t, seed);
    }
    return out;
}

CombinedProcess::CombinedProcess(std::optional<LevyStrengthData> type1,
                                 std::optional<LevyStrengthData> type2, double drift)
    : type1_(std::move(type1)), type2_(std::move(type2)), drift_(drift) {
    if (!std::isfinite(drift_)) throw std::invalid_argument("CombinedProcess: non-finite drift");
}

Complex CombinedProcess::cf(double x, double t) const {
    Complex c = std::exp(Complex(0.0, x * drift_ * t));
    if (type1_) c *= type1_cf(x, t, *type1_);
    if (type2_) c *= type2_cf(x, t, *type2_);
    return c;
}

double CombinedProcess::sample(double t, std::uint64_t seed) const {
    double s = drift_ * t;
    if (type1_) s += sample_type1(*type1_, t, rng::derive(seed, "type1"));
    if (type2_) s += sample_type2(*type2_, t, rng::derive(seed, "type2"));
    return s;
}

std::vector<double> CombinedProcess::sample_batch(double t, std::size_t n,
                                                  std::uint64_t root_seed) const {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = sample(t, rng::derive(root_seed, static_cast<std::uint64_t>(i)));
    }
    return out;
}

Complex empirical_cf(const std::vector<double>& samples, double x) {
    if (samples.empty()) throw std::invalid_argument("empirical_cf: no samples");
    double re = 0.0;
    double im = 0.0;
    for (double s : samples) {
        re += std::cos(x * s);
        im += std::sin(x * s);
    }
    const double n = static_cast<double>(samples.size());
    return {re / n, im / n};
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    if (n == 0) return {};
    if (n == 1) return {lo};
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    out.back() = hi;
    return out;
}

}  // namespace qsb::levy
