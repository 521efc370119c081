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

#include "qsb/serialize.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace qsb::io {

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const CVector& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(to_json(v(i)));
    return a;
}

Json to_json(const CMatrix& m) {
    Json data = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(to_json(m(r, c)));
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

namespace {

Json basis_json(const fock::FockBasis& b) {
    return {{"modes", b.modes()}, {"cutoff", b.cutoff()}, {"dim", b.dim()}};
}

fock::BasisPtr basis_from_json(const Json& j) {
    const fock::BasisPtr b = fock::make_basis(j.at("modes").get<int>(), j.at("cutoff").get<int>());
    if (j.contains("dim") && j.at("dim").get<std::size_t>() != b->dim()) {
        throw std::invalid_argument("basis descriptor: dim does not match modes/cutoff");
    }
    return b;
}

}  // namespace

Json to_json(const fock::FockVector& v) {
    return {{"basis", basis_json(*v.basis)}, {"coeffs", to_json(v.coeffs)}};
}

Json to_json(const fock::FockOperator& op) {
    return {{"basis", basis_json(*op.basis)}, {"matrix", to_json(op.matrix)}};
}

Json to_json(const ito::ItoMatrix& n) {
    return {{"alpha", to_json(n.alpha)},
            {"bra", to_json(n.bra)},
            {"ket", to_json(n.ket)},
            {"op", to_json(n.op)}};
}

Json to_json(const qsc::FirstFormulaReport& r) {
    return {{"lhs", to_json(r.lhs)},
            {"rhs", to_json(r.rhs)},
            {"abs_err", r.abs_err},
            {"rel_err", r.rel_err},
            {"grid", {{"n_slots", r.n_slots}, {"dt_max", r.dt_max}}},
            {"cutoffs", {{"slot", r.slot_cutoff}}},
            {"engine", r.engine},
            {"slope_estimate", nullptr}};
}

Json to_json(const qsc::SecondFormulaReport& r) {
    return {{"lhs", to_json(r.lhs)},
            {"rhs", to_json(r.rhs_three_term)},
            {"rhs_two_term", to_json(r.rhs_two_term)},
            {"abs_err", r.abs_err},
            {"rel_err", r.rel_err},
            {"abs_err_two_term", r.abs_err_two_term},
            {"grid", {{"n_slots", r.n_slots}, {"dt_max", r.dt_max}}},
            {"cutoffs", {{"slot", r.slot_cutoff}}},
            {"engine", r.engine},
            {"slope_estimate", nullptr}};
}

Json to_json(const qsc::RefinementStudy& s) {
    Json rows = Json::array();
    for (const auto& r : s.rows) {
        rows.push_back({{"n_slots", r.n_slots},
                        {"dt_max", r.dt_max},
                        {"err_three_term", r.err_three_term},
                        {"err_two_term", r.err_two_term}});
    }
    return {{"rows", std::move(rows)},
            {"slope_estimate", s.slope_three_term},
            {"slope_two_term", s.slope_two_term}};
}

Json to_json(const levy::CFTable& t) {
    Json values = Json::array();
    for (const Complex& z : t.values) values.push_back(to_json(z));
    return {{"x", t.x}, {"t", t.t}, {"values", std::move(values)}, {"provenance", t.provenance}};
}

Json to_json(const wiener::MonteCarloReport& r) {
    return {{"n_paths", r.n_paths},
            {"estimate", r.estimate},
            {"target", r.target},
            {"std_error", r.std_error},
            {"z_score", r.z_score}};
}

Json to_json(const wiener::ConditionalReport& r) {
    return {{"t", r.t},
            {"outer_paths", r.outer_paths},
            {"inner_paths", r.inner_paths},
            {"max_residual", r.max_residual},
            {"max_abs_z", r.max_abs_z},
            {"max_split_residual", r.max_split_residual}};
}

Complex complex_from_json(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw std::invalid_argument("expected a complex number as [re, im] or a real number, got " +
                                j.dump());
}

CVector vector_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("expected a non-empty vector");
    CVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
    return v;
}

CMatrix matrix_from_json(const Json& j) {
    if (j.is_object()) {
        const auto rows = j.at("rows").get<Eigen::Index>();
        const auto cols = j.at("cols").get<Eigen::Index>();
        const Json& data = j.at("data");
        if (rows < 1 || cols < 1 || data.size() != static_cast<std::size_t>(rows * cols)) {
            throw std::invalid_argument("matrix: rows * cols does not match the data length");
        }
        CMatrix m(rows, cols);
        for (Eigen::Index r = 0; r < rows; ++r) {
            for (Eigen::Index c = 0; c < cols; ++c) {
                m(r, c) = complex_from_json(data[static_cast<std::size_t>(r * cols + c)]);
            }
        }
        return m;
    }
    if (!j.is_array() || j.empty() || !j[0].is_array()) {
        throw std::invalid_argument("matrix: expected an object or an array of rows");
    }
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    CMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Json& row = j[static_cast<std::size_t>(r)];
        if (static_cast<Eigen::Index>(row.size()) != cols) {
            throw std::invalid_argument("matrix: ragged rows");
        }
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
    }
    return m;
}

ito::ItoMatrix ito_from_json(const Json& j, int modes) {
    ito::ItoMatrix n = ito::ItoMatrix::zero(modes);
    if (j.contains("alpha")) n.alpha = complex_from_json(j.at("alpha"));
    if (j.contains("bra")) n.bra = vector_from_json(j.at("bra"));
    if (j.contains("ket")) n.ket = vector_from_json(j.at("ket"));
    if (j.contains("op")) n.op = matrix_from_json(j.at("op"));
    if (n.modes() != modes) throw std::invalid_argument("strength: op block has the wrong d");
    n.validate();
    return n;
}

fock::FockVector fock_vector_from_json(const Json& j) {
    fock::FockVector v{basis_from_json(j.at("basis")), vector_from_json(j.at("coeffs"))};
    if (static_cast<std::size_t>(v.coeffs.size()) != v.basis->dim()) {
        throw std::invalid_argument("FockVector: coefficient count does not match the basis");
    }
    return v;
}

fock::FockOperator fock_operator_from_json(const Json& j) {
    fock::FockOperator op{basis_from_json(j.at("basis")), matrix_from_json(j.at("matrix"))};
    const auto d = static_cast<Eigen::Index>(op.basis->dim());
    if (op.matrix.rows() != d || op.matrix.cols() != d) {
        throw std::invalid_argument("FockOperator: matrix shape does not match the basis");
    }
    return op;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string refinement_csv(const qsc::RefinementStudy& s) {
    std::ostringstream os;
    os << "n_slots,dt_max,err_three_term,err_two_term\r\n";
    for (const auto& r : s.rows) {
        os << r.n_slots << ',' << format_double(r.dt_max) << ',' << format_double(r.err_three_term)
           << ',' << format_double(r.err_two_term) << "\r\n";
    }
    return os.str();
}

std::string cf_csv(const std::vector<levy::CFTable>& tables) {
    std::ostringstream os;
    os << "x,re,im,provenance\r\n";
    for (const auto& t : tables) {
        for (std::size_t i = 0; i < t.x.size(); ++i) {
            os << format_double(t.x[i]) << ',' << format_double(t.values[i].real()) << ','
               << format_double(t.values[i].imag()) << ',' << csv_field(t.provenance) << "\r\n";
        }
    }
    return os.str();
}

}  // namespace qsb::io
