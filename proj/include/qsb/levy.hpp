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

// levy.hpp: Weyl processes driven by a euclidean path, and the type I / type
// II Levy observables with their characteristic functions and samplers.

#pragma once

#include "qsb/fock.hpp"
#include "qsb/grid.hpp"
#include "qsb/ito_algebra.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qsb::levy {

/// Step path t -> (phi(t), U(t)) in the euclidean group of C^d.
class EuclideanPath {
public:
    EuclideanPath(GridPtr grid, std::vector<CVector> phi, std::vector<CMatrix> unitary);

    const GridPtr& grid() const noexcept { return grid_; }
    int modes() const noexcept { return modes_; }
    const CVector& phi(std::size_t slot) const { return phi_.at(slot); }
    const CMatrix& unitary(std::size_t slot) const { return unitary_.at(slot); }

    EuclideanPath refined(std::size_t factor, GridPtr fine_grid) const;

private:
    GridPtr grid_;
    int modes_;
    std::vector<CVector> phi_;
    std::vector<CMatrix> unitary_;
};

/// <e(f)| W([a, b]) |e(g)> in closed form; a < b grid points.
Complex weyl_matrix_element(const StepFunction& f, const StepFunction& g, double a, double b,
                            const EuclideanPath& path);

/// Per-slot strength (-|phi|^2/2, row -<phi|U, |phi>, U - 1).
ito::StrengthFunction weyl_generator(const EuclideanPath& path);

enum class QsdeScheme { exact, euler };

/// m(t_j) = <e(f)| W(t_j) |e(g)> for j = 0..n, from m(0) = exp(<f|g>) and the
/// per-slot update m *= exp(nu Delta) (exact) or m *= 1 + nu Delta (euler).
std::vector<Complex> solve_weyl_qsde(const StepFunction& f, const StepFunction& g,
                                     const EuclideanPath& path,
                                     QsdeScheme scheme = QsdeScheme::exact);

/// Dense oracle: the product of per-slot W(phi_j sqrt(Delta_j), U_j) on the
/// slot space, slots in [a, b), identity elsewhere.
Complex weyl_dense_element(const StepFunction& f, const StepFunction& g, double a, double b,
                           const EuclideanPath& path, int slot_cutoff);

/// Per-slot (psi_j, H_j) with H_j Hermitian.
class LevyStrengthData {
public:
    LevyStrengthData(GridPtr grid, std::vector<CVector> psi, std::vector<CMatrix> h);

    static LevyStrengthData constant(GridPtr grid, const CVector& psi, const CMatrix& h);

    const GridPtr& grid() const noexcept { return grid_; }
    int modes() const noexcept { return modes_; }
    const CVector& psi(std::size_t slot) const { return psi_.at(slot); }
    const CMatrix& h(std::size_t slot) const { return h_.at(slot); }

private:
    GridPtr grid_;
    int modes_;
    std::vector<CVector> psi_;
    std::vector<CMatrix> h_;
};

struct Atom {
    double jump;
    double weight;
};

/// Atoms per slot: eigenvalues y_k of H_j with weights |<v_k|psi_j>|^2.
std::vector<std::vector<Atom>> levy_atoms(const LevyStrengthData& data);

/// Atoms with |y| below this are treated as the Gaussian atom.
inline constexpr double kZeroJump = 1e-9;

/// exp(sum_j Delta_j sum_k w_k (e^{ixy_k} - 1)), t a grid point.
Complex type1_cf(double x, double t, const LevyStrengthData& data);

/// exp(sum_j Delta_j sum_k w_k (e^{ixy_k} - 1 - ixy_k) / y_k^2), zero atoms
/// contributing -x^2/2 per unit weight.
Complex type2_cf(double x, double t, const LevyStrengthData& data);

/// Per-slot strength built from U_x = exp(ixH):
/// (<psi|(U_x-1)|psi>, row <psi|(U_x-1), (U_x-1)|psi>, U_x-1).
ito::StrengthFunction type1_generator(double x, const LevyStrengthData& data);

/// Vacuum expectation of the solution of dW = W dLambda_N, W(0) = 1, at t:
/// exp(sum_j Delta_j nu_{N_j}(0, 0)).
Complex vacuum_solution(const ito::StrengthFunction& n, double t);

inline constexpr int kMinOperatorCutoff = 12;

/// <psi|H|psi> t I + a^dagger(H psi sqrt t) + lambda(H) + a(H psi sqrt t).
/// Throws std::invalid_argument when the basis cutoff is below 12.
fock::FockOperator bounded_Z_operator(const fock::BasisPtr& basis, const CVector& psi,
                                      const CMatrix& h, double t);
/// a^dagger(psi sqrt t) + lambda(H) + a(psi sqrt t).
fock::FockOperator bounded_Zprime_operator(const fock::BasisPtr& basis, const CVector& psi,
                                           const CMatrix& h, double t);

/// <e(0)| exp(ixZ) |e(0)>.
Complex vacuum_cf(const fock::FockOperator& z, double x);

double sample_type1(const LevyStrengthData& data, double t, std::uint64_t seed);
double sample_type2(const LevyStrengthData& data, double t, std::uint64_t seed);

enum class SampleKind { type1, type2 };

/// Sample i uses seed rng::derive(root_seed, i).
std::vector<double> sample_batch(SampleKind kind, const LevyStrengthData& data, double t,
                                 std::size_t n, std::uint64_t root_seed);

/// Z1 (x) 1 + 1 (x) Z2' + drift * t with Z1 of type I and Z2' of type II over
/// independent spaces. Either component may be absent.
class CombinedProcess {
public:
    CombinedProcess(std::optional<LevyStrengthData> type1, std::optional<LevyStrengthData> type2,
                    double drift = 0.0);

    Complex cf(double x, double t) const;
    /// The components use rng::derive(seed, "type1") and rng::derive(seed, "type2").
    double sample(double t, std::uint64_t seed) const;
    std::vector<double> sample_batch(double t, std::size_t n, std::uint64_t root_seed) const;

    double drift() const noexcept { return drift_; }

private:
    std::optional<LevyStrengthData> type1_;
    std::optional<LevyStrengthData> type2_;
    double drift_;
};

/// (1/n) sum exp(i x s).
Complex empirical_cf(const std::vector<double>& samples, double x);

/// Characteristic-function table with its provenance tag.
struct CFTable {
    std::vector<double> x;
    double t = 0.0;
    std::vector<Complex> values;
    std::string provenance;  // analytic | operator | empirical
};

/// n equally spaced points on [lo, hi], both ends included.
std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace qsb::levy
