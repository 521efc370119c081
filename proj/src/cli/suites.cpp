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

#include "qsb/cli/suites.hpp"

#include "qsb/checks.hpp"
#include "qsb/fock.hpp"
#include "qsb/levy.hpp"
#include "qsb/qsc.hpp"
#include "qsb/random.hpp"
#include "qsb/serialize.hpp"
#include "qsb/wiener.hpp"
#include "suites_common.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qsb::cli {

Check below(std::string name, double value, double threshold) {
    return {std::move(name), value, threshold, "<", value < threshold, Json::object()};
}

Check at_most(std::string name, double value, double threshold) {
    return {std::move(name), value, threshold, "<=", value <= threshold, Json::object()};
}

Check at_least(std::string name, double value, double threshold) {
    return {std::move(name), value, threshold, ">=", value >= threshold, Json::object()};
}

Check within(std::string name, double value, double center, double band) {
    Check c{std::move(name), value, band, "within", std::abs(value - center) <= band, Json::object()};
    c.details["center"] = center;
    return c;
}

Json to_json(const Check& c) {
    const auto num = [](double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); };
    Json j = {{"name", c.name},
              {"value", num(c.value)},
              {"threshold", c.threshold},
              {"relation", c.relation},
              {"pass", c.pass}};
    if (!c.details.empty()) j["details"] = c.details;
    return j;
}

bool Outcome::passed() const { return first_failure() == nullptr; }

const Check* Outcome::first_failure() const {
    for (const Check& c : checks) {
        if (!c.pass) return &c;
    }
    return nullptr;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"ccr",           "weyl",          "ito-algebra",
                                                   "fundamental-1", "fundamental-2", "wiener"};
    return names;
}

FundamentalScenario fundamental_scenario(const RunConfig& config) {
    const Json& b = config.block("fundamental");
    const GridPtr grid = config.grid();
    FundamentalScenario s{grid,
                          step_from_json(b.at("f"), grid, config.modes),
                          step_from_json(b.at("g"), grid, config.modes),
                          strength_from_json(b.at("n1"), grid, config.modes),
                          strength_from_json(b.at("n2"), grid, config.modes),
                          strength_from_json(b.at("inner"), grid, config.modes),
                          strength_from_json(b.at("creation"), grid, config.modes),
                          qsc::IntegralFamily(grid, config.modes),
                          0,
                          b.at("doublings").get<std::size_t>()};
    s.iterated = s.family.add_integral(qsc::IntegralFamily::kIdentity, s.inner);
    return s;
}

levy::EuclideanPath weyl_path(const Json& b, const GridPtr& grid, int modes) {
    const StepFunction phi = step_from_json(b.at("phi"), grid, modes);
    std::vector<CMatrix> unitary;
    for (const CMatrix& h : matrices_from_json(b.at("h"), grid->slot_count())) {
        if (h.rows() != modes || h.cols() != modes || numerics::hermitian_defect(h) > 1e-10) {
            throw ConfigError("config: weyl_process.h must hold Hermitian d x d matrices");
        }
        unitary.push_back(numerics::mat_exp(kI * h));
    }
    return levy::EuclideanPath(grid, phi.values(), std::move(unitary));
}

namespace {

std::size_t size_of(const Json& b, const char* key) { return b.at(key).get<std::size_t>(); }

Outcome verify_ccr(const RunConfig& config) {
    const Json& b = config.block("ccr");
    const int d = b.at("d").get<int>();
    const int cutoff = b.at("cutoff").get<int>();
    const std::size_t draws = size_of(b, "draws");
    const double scale = b.at("scale").get<double>();
    const std::uint64_t seed = rng::derive(config.seed, "ccr");
    const double tol = config.tolerances.ccr;

    Outcome out;
    Json residuals = Json::object();
    for (const auto& r : checks::ccr_suite(d, cutoff, draws, scale, seed)) {
        out.checks.push_back(below("ccr." + r.name, r.value, tol));
        residuals[r.name] = r.value;
    }

    const fock::BasisPtr basis = fock::make_basis(d, cutoff);
    rng::CounterEngine engine(rng::derive(seed, "adjoint"));
    const CVector u = checks::random_vector(engine, d, scale);
    const CMatrix k = checks::random_matrix(engine, d, scale);
    const double adj_creation = numerics::max_abs(
        CMatrix(fock::creation(basis, u).matrix - fock::annihilation(basis, u).matrix.adjoint()));
    const double adj_conservation = numerics::max_abs(CMatrix(
        fock::conservation(basis, k).matrix.adjoint() - fock::conservation(basis, k.adjoint()).matrix));
    out.checks.push_back(below("ccr.adjoint_creation", adj_creation, tol));
    out.checks.push_back(below("ccr.adjoint_conservation", adj_conservation, tol));

    out.report = {{"d", d},
                  {"cutoff", cutoff},
                  {"guarded_level", cutoff - 2},
                  {"draws", draws},
                  {"max_residuals", residuals}};
    return out;
}

Outcome verify_weyl(const RunConfig& config) {
    const Thresholds& tol = config.tolerances;
    Outcome out;

    const Json& eb = config.block("exponential");
    const fock::BasisPtr ebasis = fock::make_basis(config.modes, eb.at("cutoff").get<int>());
    const double eradius = eb.at("radius").get<double>();
    rng::CounterEngine eengine(rng::derive(config.seed, "exponential"));
    CVector edge = CVector::Zero(config.modes);
    edge(0) = eradius;
    double inner_err = checks::inner_product_error(ebasis, edge, edge);
    double eig_err = checks::eigenrelation_residual(ebasis, edge, edge);
    for (std::size_t i = 0; i < size_of(eb, "draws"); ++i) {
        const CVector u = checks::random_in_ball(eengine, config.modes, eradius);
        const CVector v = checks::random_in_ball(eengine, config.modes, eradius);
        inner_err = std::max(inner_err, checks::inner_product_error(ebasis, u, v));
        eig_err = std::max(eig_err, checks::eigenrelation_residual(ebasis, u, v));
    }
    out.checks.push_back(below("weyl.inner_product", inner_err, tol.inner_product));
    out.checks.push_back(below("weyl.eigenrelation", eig_err, tol.eigenrelation));

    const Json& wb = config.block("weyl");
    const int d = wb.at("d").get<int>();
    const double radius = wb.at("radius").get<double>();
    const fock::BasisPtr basis = fock::make_basis(d, config.fock_cutoff);
    rng::CounterEngine wengine(rng::derive(config.seed, "weyl-action"));
    CVector fixed = checks::random_in_ball(wengine, d, 1.0);
    if (fixed.norm() == 0.0) fixed(0) = 1.0;
    fixed *= radius / fixed.norm();
    double action = checks::weyl_action_residual(basis, fixed);
    for (std::size_t i = 0; i < size_of(wb, "draws"); ++i) {
        action = std::max(action, checks::weyl_action_residual(basis, checks::random_in_ball(wengine, d, radius)));
    }
    out.checks.push_back(below("weyl.action", action, tol.weyl_action));

    Json by_cutoff = Json::array();
    double worst_ratio = 0.0;
    double previous = std::numeric_limits<double>::quiet_NaN();
    for (const Json& k : wb.at("cutoffs")) {
        const double r = checks::weyl_action_residual(fock::make_basis(d, k.get<int>()), fixed);
        by_cutoff.push_back({{"cutoff", k.get<int>()}, {"residual", r}});
        if (!std::isnan(previous)) worst_ratio = std::max(worst_ratio, r / previous);
        previous = r;
    }
    if (by_cutoff.size() >= 2) out.checks.push_back(below("weyl.action_monotone", worst_ratio, 1.0));

    const auto probes = checks::probe_vectors(d, wb.at("probe_radius").get<double>(),
                                              size_of(wb, "probes"),
                                              rng::derive(config.seed, "weyl-probes"));
    const double rradius = wb.at("relation_radius").get<double>();
    rng::CounterEngine rengine(rng::derive(config.seed, "weyl-relations"));
    checks::ResidualSet relations;
    for (std::size_t i = 0; i < size_of(wb, "draws"); ++i) {
        const CVector u1 = checks::random_in_ball(rengine, d, rradius);
        const CVector u2 = checks::random_in_ball(rengine, d, rradius);
        const CMatrix v1 = checks::random_unitary(rengine, d);
        const CMatrix v2 = checks::random_unitary(rengine, d);
        relations = checks::merge_max(relations,
                                      checks::weyl_relation_residuals(basis, u1, u2, v1, v2, probes));
    }
    for (const auto& r : relations) {
        const double t = r.name == "covariance" ? tol.weyl_action : tol.weyl_relations;
        out.checks.push_back(below("weyl." + r.name, r.value, t));
    }

    const Json& pb = config.block("weyl_process");
    const int pd = pb.at("d").get<int>();
    const GridPtr grid =
        make_grid(TimeGrid::uniform(pb.at("T").get<double>(), size_of(pb, "n_slots")));
    const StepFunction f = step_from_json(pb.at("f"), grid, pd);
    const StepFunction g = step_from_json(pb.at("g"), grid, pd);
    const levy::EuclideanPath path = weyl_path(pb, grid, pd);
    const std::vector<Complex> traj = levy::solve_weyl_qsde(f, g, path, levy::QsdeScheme::exact);
    double qsde_err = std::abs(traj[0] - std::exp(l2_inner(f, g)));
    for (std::size_t j = 1; j < traj.size(); ++j) {
        const Complex closed = levy::weyl_matrix_element(f, g, 0.0, grid->point(j), path);
        qsde_err = std::max(qsde_err, std::abs(traj[j] - closed) / std::max(1.0, std::abs(closed)));
    }
    out.checks.push_back(below("weyl.qsde_exact_scheme", qsde_err, tol.qsde_exact));

    const int pcut = pb.at("slot_cutoff").get<int>();
    const double horizon = grid->horizon();
    double dense_err = std::abs(levy::weyl_dense_element(f, g, 0.0, horizon, path, pcut) -
                                levy::weyl_matrix_element(f, g, 0.0, horizon, path));
    if (grid->slot_count() >= 3) {
        const double a = grid->point(1);
        const double b = grid->point(grid->slot_count() - 1);
        dense_err = std::max(dense_err, std::abs(levy::weyl_dense_element(f, g, a, b, path, pcut) -
                                                 levy::weyl_matrix_element(f, g, a, b, path)));
    }
    out.checks.push_back(below("weyl.dense_oracle", dense_err, tol.weyl_dense));

    out.report = {{"fock_cutoff", config.fock_cutoff},
                  {"action_by_cutoff", std::move(by_cutoff)},
                  {"weyl_process_endpoint", io::to_json(traj.back())}};
    return out;
}

Outcome verify_ito(const RunConfig& config) {
    const Json& b = config.block("ito_algebra");
    const int d = b.at("d").get<int>();
    Outcome out;
    for (const auto& r : checks::ito_algebra_residuals(d, size_of(b, "triples"), b.at("scale").get<double>(),
                                                      rng::derive(config.seed, "ito-algebra"))) {
        const double t = r.name == "nu_adjoint" ? config.tolerances.nu_adjoint : config.tolerances.ito;
        out.checks.push_back(below("ito." + r.name, r.value, t));
    }

    const CVector one = CVector::Ones(1);
    const std::vector<std::pair<std::string, ito::ItoMatrix>> basic = {
        {"dA_dagger", ito::ItoMatrix::creation(one)},
        {"dLambda", ito::ItoMatrix::conservation(CMatrix::Identity(1, 1))},
        {"dA", ito::ItoMatrix::annihilation(one)},
        {"dt", ito::ItoMatrix::time(1.0, 1)},
    };
    const auto expected = [&](std::size_t i, std::size_t j) -> ito::ItoMatrix {
        if (i == 2 && j == 0) return basic[3].second;
        if (i == 2 && j == 1) return basic[2].second;
        if (i == 1 && j == 0) return basic[0].second;
        if (i == 1 && j == 1) return basic[1].second;
        return ito::ItoMatrix::zero(1);
    };
    Json table = Json::array();
    double table_err = 0.0;
    for (std::size_t i = 0; i < basic.size(); ++i) {
        for (std::size_t j = 0; j < basic.size(); ++j) {
            const ito::ItoMatrix p = ito::ito_product_table(basic[i].second, basic[j].second);
            table_err = std::max(table_err, ito::max_abs_difference(p, expected(i, j)));
            table.push_back({{"left", basic[i].first}, {"right", basic[j].first}, {"product", io::to_json(p)}});
        }
    }
    out.checks.push_back(below("ito.product_table", table_err, config.tolerances.ito));
    out.report = {{"d", d}, {"triples", size_of(b, "triples")}, {"product_table", std::move(table)}};
    return out;
}

Outcome verify_fundamental_1(const RunConfig& config) {
    FundamentalScenario s = fundamental_scenario(config);
    const double t = s.grid->horizon();
    Outcome out;
    const auto identity = qsc::check_first_fundamental(s.family, qsc::IntegralFamily::kIdentity, s.n1, s.f,
                                                       s.g, t, config.slot_cutoff, config.dim_limit);
    const auto iterated = qsc::check_first_fundamental(s.family, s.iterated, s.n1, s.f, s.g, t,
                                                       config.slot_cutoff, config.dim_limit);
    const auto study = qsc::first_formula_refinement(s.family, s.iterated, s.n1, s.f, s.g,
                                                     config.slot_cutoff, s.doublings);
    out.checks.push_back(below("first_formula.identity", identity.abs_err, config.tolerances.first_formula));
    out.checks.push_back(below("first_formula.iterated", iterated.abs_err, config.tolerances.first_formula));
    out.checks.push_back(within("first_formula.refinement_slope", study.slope_three_term,
                                config.tolerances.slope_center, config.tolerances.slope_band));
    out.report = {{"identity_integrand", io::to_json(identity)},
                  {"iterated_integrand", io::to_json(iterated)},
                  {"refinement", io::to_json(study)}};
    return out;
}

Outcome verify_fundamental_2(const RunConfig& config, bool drop_correction) {
    FundamentalScenario s = fundamental_scenario(config);
    const double t = s.grid->horizon();
    constexpr std::size_t id = qsc::IntegralFamily::kIdentity;
    const double tol = config.tolerances.second_formula;
    Outcome out;
    const auto generic = qsc::check_second_fundamental(s.family, id, s.n1, id, s.n2, s.f, s.g, t,
                                                       config.slot_cutoff, config.dim_limit);
    const auto iterated = qsc::check_second_fundamental(s.family, s.iterated, s.n1, s.iterated, s.n2, s.f,
                                                        s.g, t, config.slot_cutoff, config.dim_limit);
    const auto creation = qsc::check_second_fundamental(s.family, id, s.creation, id, s.creation, s.f, s.g,
                                                        t, config.slot_cutoff, config.dim_limit);
    if (drop_correction) {
        out.checks.push_back(below("second_formula.two_term", generic.abs_err_two_term, tol));
        out.checks.push_back(below("second_formula.iterated_two_term", iterated.abs_err_two_term, tol));
    } else {
        out.checks.push_back(below("second_formula.three_term", generic.abs_err, tol));
        out.checks.push_back(below("second_formula.iterated_three_term", iterated.abs_err, tol));
    }
    const double ratio = creation.abs_err > 0.0 ? creation.abs_err_two_term / creation.abs_err
                                                : std::numeric_limits<double>::infinity();
    Check sep = at_least("second_formula.correction_separation", ratio, config.tolerances.separation);
    sep.details = {{"three_term_residual", creation.abs_err}, {"two_term_residual", creation.abs_err_two_term}};
    out.checks.push_back(std::move(sep));
    out.report = {{"drop_correction", drop_correction},
                  {"generic", io::to_json(generic)},
                  {"iterated", io::to_json(iterated)},
                  {"pure_creation", io::to_json(creation)}};
    return out;
}

Outcome verify_wiener(const RunConfig& config) {
    const Json& b = config.block("wiener");
    const GridPtr grid = make_grid(TimeGrid::uniform(b.at("T").get<double>(), size_of(b, "n_slots")));
    const StepFunction u = step_from_json(b.at("u"), grid, 1);
    const StepFunction v = step_from_json(b.at("v"), grid, 1);
    const std::size_t paths = size_of(b, "paths");
    if (paths < 2) throw ConfigError("config: wiener.paths must be >= 2");
    const double tcond = b.at("t_condition").get<double>();
    if (!grid->contains_point(tcond)) throw ConfigError("config: wiener.t_condition must be a grid point");
    const double zmax = config.tolerances.z_max;
    Outcome out;
    try {
        const auto mean = wiener::exponential_mean(u, paths, rng::derive(config.seed, "wiener-mean"));
        const auto product = wiener::exponential_product(u, v, paths, rng::derive(config.seed, "wiener-product"));
        const auto second = wiener::exponential_product(u, u, paths, rng::derive(config.seed, "wiener-second"));
        const auto cond = wiener::conditional_projection_check(u, tcond, size_of(b, "outer"), size_of(b, "inner"),
                                                               rng::derive(config.seed, "wiener-conditional"));
        out.checks.push_back(at_most("wiener.mean_z", std::abs(mean.z_score), zmax));
        out.checks.push_back(at_most("wiener.product_z", std::abs(product.z_score), zmax));
        out.checks.push_back(at_most("wiener.second_moment_z", std::abs(second.z_score), zmax));
        out.checks.push_back(at_most("wiener.conditional_z", cond.max_abs_z, zmax));
        out.checks.push_back(below("wiener.split_product", cond.max_split_residual, config.tolerances.split));
        out.report = {{"mean", io::to_json(mean)},
                      {"product", io::to_json(product)},
                      {"second_moment", io::to_json(second)},
                      {"conditional", io::to_json(cond)}};
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: wiener: ") + e.what());
    }
    return out;
}

}  // namespace

Outcome run_verify(const std::string& suite, const RunConfig& config, bool drop_correction) {
    Outcome out;
    if (suite == "ccr") {
        out = verify_ccr(config);
    } else if (suite == "weyl") {
        out = verify_weyl(config);
    } else if (suite == "ito-algebra") {
        out = verify_ito(config);
    } else if (suite == "fundamental-1") {
        out = verify_fundamental_1(config);
    } else if (suite == "fundamental-2") {
        out = verify_fundamental_2(config, drop_correction);
    } else if (suite == "wiener") {
        out = verify_wiener(config);
    } else {
        throw ConfigError("unknown suite '" + suite + "'");
    }
    out.report["suite"] = suite;
    out.report["passed"] = out.passed();
    Json checks = Json::array();
    for (const Check& c : out.checks) checks.push_back(to_json(c));
    out.report["checks"] = std::move(checks);
    return out;
}

}  // namespace qsb::cli
