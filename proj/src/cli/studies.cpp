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

#include "qsb/fock.hpp"
#include "qsb/levy.hpp"
#include "qsb/qsc.hpp"
#include "qsb/random.hpp"
#include "qsb/serialize.hpp"
#include "suites_common.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace qsb::cli {

const std::vector<std::string>& cf_kinds() {
    static const std::vector<std::string> kinds = {"type1", "type2", "gauss", "poissonfield"};
    return kinds;
}

const std::vector<std::string>& convergence_targets() {
    static const std::vector<std::string> targets = {"weyl-qsde", "fundamental-2"};
    return targets;
}

const std::vector<std::string>& sample_kinds() {
    static const std::vector<std::string> kinds = {"type1", "type2", "combined"};
    return kinds;
}

namespace {

levy::CFTable make_table(const std::vector<double>& xs, double t, std::string provenance,
                         const std::function<Complex(double)>& cf) {
    levy::CFTable table{xs, t, {}, std::move(provenance)};
    for (double x : xs) table.values.push_back(cf(x));
    return table;
}

/// sup over |x| <= range of |a(x) - b(x)|.
double sup_distance(const levy::CFTable& a, const levy::CFTable& b, double range) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.x.size(); ++i) {
        if (std::abs(a.x[i]) <= range) worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
    }
    return worst;
}

bool homogeneous(const levy::LevyStrengthData& data) {
    for (std::size_t j = 1; j < data.grid()->slot_count(); ++j) {
        if (data.psi(j) != data.psi(0) || data.h(j) != data.h(0)) return false;
        if (data.grid()->width(j) != data.grid()->width(0)) return false;
    }
    return true;
}

GridPtr levy_grid(const Json& b) {
    return make_grid(TimeGrid::uniform(b.at("T").get<double>(), b.at("n_slots").get<std::size_t>()));
}

std::size_t sample_count(const Json& levy_block) {
    const auto n = levy_block.at("samples").get<std::size_t>();
    if (n == 0) throw ConfigError("config: levy.samples must be >= 1");
    return n;
}

struct OperatorRoute {
    bool available = false;
    std::string reason;
    int cutoff = 0;
    std::size_t dim = 0;
};

OperatorRoute operator_route(int modes, int cutoff, std::size_t dim_limit, bool needs_cutoff) {
    OperatorRoute r;
    r.cutoff = cutoff;
    r.dim = fock::FockBasis::expected_dim(modes, cutoff);
    if (r.dim > dim_limit) {
        r.reason = "basis dimension " + std::to_string(r.dim) + " exceeds dim_limit " + std::to_string(dim_limit);
    } else if (needs_cutoff && cutoff < levy::kMinOperatorCutoff) {
        r.reason = "operator cutoff below " + std::to_string(levy::kMinOperatorCutoff);
    } else {
        r.available = true;
    }
    return r;
}

Json route_json(const OperatorRoute& r) {
    Json j = {{"available", r.available}, {"cutoff", r.cutoff}, {"dim", r.dim}};
    if (!r.available) j["reason"] = r.reason;
    return j;
}

Outcome finish_cf(const std::string& kind, const RunConfig& config, double t, levy::CFTable analytic,
                  std::optional<levy::CFTable> op, const OperatorRoute& route, levy::CFTable empirical,
                  std::size_t n) {
    const Thresholds& tol = config.tolerances;
    Outcome out;
    std::vector<levy::CFTable> tables{analytic};
    double x0 = 0.0;
    bool has_x0 = false;
    for (std::size_t i = 0; i < analytic.x.size(); ++i) {
        if (analytic.x[i] == 0.0) {
            has_x0 = true;
            x0 = std::max(x0, std::abs(analytic.values[i] - 1.0));
            if (op) x0 = std::max(x0, std::abs(op->values[i] - 1.0));
            x0 = std::max(x0, std::abs(empirical.values[i] - 1.0));
        }
    }
    if (has_x0) out.checks.push_back(below("cf.x0_row", x0, 1e-12));
    if (op) {
        out.checks.push_back(below("cf.operator_vs_analytic", sup_distance(*op, analytic, tol.operator_cf_range),
                                   tol.operator_cf));
        tables.push_back(*op);
    }
    const double bound = tol.cf_bound_factor / std::sqrt(static_cast<double>(n));
    const double emp = sup_distance(empirical, analytic, std::numeric_limits<double>::infinity());
    out.checks.push_back(at_most("cf.empirical_vs_analytic", emp, bound));
    tables.push_back(empirical);

    Json jt = Json::array();
    for (const auto& tab : tables) jt.push_back(io::to_json(tab));
    out.report = {{"kind", kind},
                  {"t", t},
                  {"tables", std::move(jt)},
                  {"operator_route", route_json(route)},
                  {"empirical", {{"n", n}, {"sup_distance", emp}, {"bound", bound}}}};
    out.files.emplace_back("cf_" + kind + ".csv", io::cf_csv(tables));
    return out;
}

Outcome cf_levy(const std::string& kind, const RunConfig& config) {
    const Json& b = config.block("levy");
    const GridPtr grid = levy_grid(b);
    const bool type1 = kind == "type1";
    const levy::LevyStrengthData data = levy_data_from_json(b.at(kind), grid);
    const double t = grid->horizon();
    const std::vector<double> xs = config.x_grid.points();
    const std::size_t n = sample_count(b);

    const auto analytic = make_table(xs, t, "analytic", [&](double x) {
        return type1 ? levy::type1_cf(x, t, data) : levy::type2_cf(x, t, data);
    });

    OperatorRoute route = operator_route(data.modes(), b.at("operator_cutoff").get<int>(), config.dim_limit, true);
    if (route.available && !homogeneous(data)) {
        route.available = false;
        route.reason = "strength data is not time-homogeneous";
    }
    std::optional<levy::CFTable> op;
    if (route.available) {
        const fock::BasisPtr basis = fock::make_basis(data.modes(), route.cutoff);
        const fock::FockOperator z = type1 ? levy::bounded_Z_operator(basis, data.psi(0), data.h(0), t)
                                           : levy::bounded_Zprime_operator(basis, data.psi(0), data.h(0), t);
        op = make_table(xs, t, "operator", [&](double x) { return levy::vacuum_cf(z, x); });
    }

    const auto samples = levy::sample_batch(type1 ? levy::SampleKind::type1 : levy::SampleKind::type2, data, t,
                                            n, rng::derive(config.seed, "cf-" + kind));
    const auto empirical =
        make_table(xs, t, "empirical", [&](double x) { return levy::empirical_cf(samples, x); });

    Outcome out = finish_cf(kind, config, t, analytic, op, route, empirical, n);

    if (homogeneous(data)) {
        double worst = 0.0;
        for (const Json& k : b.at("divisibility_n")) {
            const auto parts = k.get<std::size_t>();
            if (parts == 0) throw ConfigError("config: levy.divisibility_n entries must be >= 1");
            const GridPtr fine = make_grid(grid->refine(parts));
            const levy::LevyStrengthData fine_data(fine, std::vector<CVector>(fine->slot_count(), data.psi(0)),
                                                   std::vector<CMatrix>(fine->slot_count(), data.h(0)));
            const double dt = fine->point(1);
            for (double x : xs) {
                const Complex whole = type1 ? levy::type1_cf(x, t, data) : levy::type2_cf(x, t, data);
                const Complex part = type1 ? levy::type1_cf(x, dt, fine_data) : levy::type2_cf(x, dt, fine_data);
                worst = std::max(worst, std::abs(whole - std::pow(part, static_cast<double>(parts))));
            }
        }
        out.checks.push_back(below("cf.infinite_divisibility", worst, config.tolerances.divisibility));
    }
    return out;
}

Outcome cf_gauss(const RunConfig& config) {
    const Json& b = config.block("cf").at("gauss");
    const CVector u = io::vector_from_json(b.at("u"));
    const double t = 1.0;
    const std::vector<double> xs = config.x_grid.points();
    const std::size_t n = sample_count(config.block("levy"));
    const double norm2 = u.squaredNorm();

    const auto analytic =
        make_table(xs, t, "analytic", [&](double x) { return Complex(std::exp(-0.5 * x * x * norm2), 0.0); });
    const OperatorRoute route =
        operator_route(static_cast<int>(u.size()), config.fock_cutoff, config.dim_limit, false);
    std::optional<levy::CFTable> op;
    if (route.available) {
        const fock::FockOperator p = fock::momentum(fock::make_basis(static_cast<int>(u.size()), route.cutoff), u);
        op = make_table(xs, t, "operator", [&](double x) { return levy::vacuum_cf(p, x); });
    }
    rng::CounterEngine engine(rng::derive(config.seed, "cf-gauss"));
    std::vector<double> samples(n);
    const double sd = std::sqrt(norm2);
    for (double& s : samples) s = sd * engine.normal();
    const auto empirical =
        make_table(xs, t, "empirical", [&](double x) { return levy::empirical_cf(samples, x); });
    return finish_cf("gauss", config, t, analytic, op, route, empirical, n);
}

Outcome cf_poissonfield(const RunConfig& config) {
    const Json& b = config.block("cf").at("poissonfield");
    const CVector u = io::vector_from_json(b.at("u"));
    const CMatrix h = io::matrix_from_json(b.at("h"));
    if (h.rows() != u.size() || h.cols() != u.size() || numerics::hermitian_defect(h) > 1e-10) {
        throw ConfigError("config: cf.poissonfield.h must be a Hermitian matrix matching u");
    }
    const double t = 1.0;
    const int modes = static_cast<int>(u.size());
    const std::vector<double> xs = config.x_grid.points();
    const Json& lb = config.block("levy");
    const std::size_t n = sample_count(lb);

    const auto analytic = make_table(xs, t, "analytic", [&](double x) {
        const CMatrix ux = numerics::spectral_function(h, [x](double y) { return std::exp(kI * x * y); });
        return std::exp(u.dot((ux - CMatrix::Identity(modes, modes)) * u));
    });
    const OperatorRoute route = operator_route(modes, lb.at("operator_cutoff").get<int>(), config.dim_limit, false);
    std::optional<levy::CFTable> op;
    if (route.available) {
        const fock::BasisPtr basis = fock::make_basis(modes, route.cutoff);
        op = make_table(xs, t, "operator", [&](double x) { return fock::dilated_conservation_cf(basis, u, h, x); });
    }
    const auto data = levy::LevyStrengthData::constant(make_grid(TimeGrid::uniform(t, 1)), u, h);
    const auto samples =
        levy::sample_batch(levy::SampleKind::type1, data, t, n, rng::derive(config.seed, "cf-poissonfield"));
    const auto empirical =
        make_table(xs, t, "empirical", [&](double x) { return levy::empirical_cf(samples, x); });
    return finish_cf("poissonfield", config, t, analytic, op, route, empirical, n);
}

Check doubling_check(const std::vector<std::size_t>& slots) {
    double violations = 0.0;
    for (std::size_t i = 1; i < slots.size(); ++i) {
        if (slots[i] != 2 * slots[i - 1]) violations += 1.0;
    }
    return at_most("convergence.n_slots_doubling", violations, 0.0);
}

Outcome convergence_weyl(const RunConfig& config) {
    const Json& b = config.block("weyl_process");
    const int d = b.at("d").get<int>();
    const GridPtr grid = make_grid(TimeGrid::uniform(b.at("T").get<double>(), b.at("n_slots").get<std::size_t>()));
    const StepFunction f = step_from_json(b.at("f"), grid, d);
    const StepFunction g = step_from_json(b.at("g"), grid, d);
    const levy::EuclideanPath path = weyl_path(b, grid, d);
    const auto doublings = b.at("doublings").get<std::size_t>();
    const double horizon = grid->horizon();
    const Complex closed = levy::weyl_matrix_element(f, g, 0.0, horizon, path);

    std::ostringstream csv;
    csv << "n_slots,dt_max,err_exact_scheme,err_euler_scheme\r\n";
    std::vector<std::size_t> slots;
    std::vector<double> dts;
    std::vector<double> euler_errs;
    double worst_exact = 0.0;
    Json rows = Json::array();
    for (std::size_t r = 0; r <= doublings; ++r) {
        const std::size_t factor = std::size_t{1} << r;
        const GridPtr fine = make_grid(grid->refine(factor));
        const StepFunction ff = f.refined(factor, fine);
        const StepFunction gf = g.refined(factor, fine);
        const levy::EuclideanPath pf = path.refined(factor, fine);
        const double exact_err = std::abs(levy::solve_weyl_qsde(ff, gf, pf, levy::QsdeScheme::exact).back() - closed);
        const double euler_err = std::abs(levy::solve_weyl_qsde(ff, gf, pf, levy::QsdeScheme::euler).back() - closed);
        slots.push_back(fine->slot_count());
        dts.push_back(fine->max_width());
        euler_errs.push_back(euler_err);
        worst_exact = std::max(worst_exact, exact_err);
        csv << fine->slot_count() << ',' << io::format_double(fine->max_width()) << ','
            << io::format_double(exact_err) << ',' << io::format_double(euler_err) << "\r\n";
        rows.push_back({{"n_slots", fine->slot_count()},
                        {"dt_max", fine->max_width()},
                        {"err_exact_scheme", exact_err},
                        {"err_euler_scheme", euler_err}});
    }
    const double slope = qsc::loglog_slope(dts, euler_errs);
    Outcome out;
    out.checks.push_back(below("convergence.exact_scheme", worst_exact, config.tolerances.qsde_exact));
    out.checks.push_back(within("convergence.euler_slope", slope, config.tolerances.slope_center,
                                config.tolerances.slope_band));
    out.checks.push_back(doubling_check(slots));
    out.report = {{"target", "weyl-qsde"},
                  {"closed_form", io::to_json(closed)},
                  {"rows", std::move(rows)},
                  {"slope_estimate", slope}};
    out.files.emplace_back("convergence_weyl-qsde.csv", csv.str());
    return out;
}

Outcome convergence_fundamental(const RunConfig& config) {
    FundamentalScenario s = fundamental_scenario(config);
    const auto study = qsc::second_formula_refinement(s.family, s.iterated, s.n1, s.iterated, s.n2, s.f, s.g,
                                                      config.slot_cutoff, s.doublings);
    std::vector<std::size_t> slots;
    for (const auto& r : study.rows) slots.push_back(r.n_slots);
    Outcome out;
    out.checks.push_back(within("convergence.three_term_slope", study.slope_three_term,
                                config.tolerances.slope_center, config.tolerances.slope_band));
    out.checks.push_back(doubling_check(slots));
    out.report = io::to_json(study);
    out.report["target"] = "fundamental-2";
    out.files.emplace_back("convergence_fundamental-2.csv", io::refinement_csv(study));
    return out;
}

Json checks_json(const Outcome& out) {
    Json a = Json::array();
    for (const Check& c : out.checks) a.push_back(to_json(c));
    return a;
}

void finalize(Outcome& out) {
    out.report["passed"] = out.passed();
    out.report["checks"] = checks_json(out);
}

}  // namespace

Outcome run_cf(const std::string& kind, const RunConfig& config) {
    Outcome out;
    if (kind == "type1" || kind == "type2") {
        out = cf_levy(kind, config);
    } else if (kind == "gauss") {
        out = cf_gauss(config);
    } else if (kind == "poissonfield") {
        out = cf_poissonfield(config);
    } else {
        throw ConfigError("unknown cf kind '" + kind + "'");
    }
    finalize(out);
    return out;
}

Outcome run_convergence(const std::string& target, const RunConfig& config) {
    Outcome out;
    if (target == "weyl-qsde") {
        out = convergence_weyl(config);
    } else if (target == "fundamental-2") {
        out = convergence_fundamental(config);
    } else {
        throw ConfigError("unknown convergence target '" + target + "'");
    }
    finalize(out);
    return out;
}

Outcome run_sample(const std::string& kind, std::size_t n, const RunConfig& config) {
    if (n == 0) throw ConfigError("sample: n must be >= 1");
    const Json& b = config.block("levy");
    const GridPtr grid = levy_grid(b);
    const double t = grid->horizon();
    const std::uint64_t seed = rng::derive(config.seed, "sample-" + kind);
    std::vector<double> samples;
    std::function<Complex(double)> cf;
    if (kind == "type1" || kind == "type2") {
        const auto data = levy_data_from_json(b.at(kind), grid);
        const bool type1 = kind == "type1";
        samples = levy::sample_batch(type1 ? levy::SampleKind::type1 : levy::SampleKind::type2, data, t, n, seed);
        cf = [data, t, type1](double x) { return type1 ? levy::type1_cf(x, t, data) : levy::type2_cf(x, t, data); };
    } else if (kind == "combined") {
        const levy::CombinedProcess process(levy_data_from_json(b.at("type1"), grid),
                                            levy_data_from_json(b.at("type2"), grid), b.at("drift").get<double>());
        samples = process.sample_batch(t, n, seed);
        cf = [process, t](double x) { return process.cf(x, t); };
    } else {
        throw ConfigError("unknown sample kind '" + kind + "'");
    }

    const std::vector<double> xs = config.x_grid.points();
    double sup = 0.0;
    for (double x : xs) sup = std::max(sup, std::abs(levy::empirical_cf(samples, x) - cf(x)));
    const double bound = config.tolerances.cf_bound_factor / std::sqrt(static_cast<double>(n));

    Outcome out;
    out.checks.push_back(at_most("sample.empirical_vs_analytic", sup, bound));
    out.report = {{"kind", kind}, {"n", n}, {"t", t}, {"sup_distance", sup}, {"bound", bound}};
    std::string text;
    text.reserve(n * 24);
    for (double s : samples) {
        text += io::format_double(s);
        text += '\n';
    }
    out.files.emplace_back("samples_" + kind + ".txt", std::move(text));
    finalize(out);
    return out;
}

}  // namespace qsb::cli
