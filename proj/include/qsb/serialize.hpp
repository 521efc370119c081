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

// serialize.hpp: JSON and CSV encodings. Complex numbers are [re, im] pairs;
// matrices are {"rows", "cols", "data"} with data in row-major order.

#pragma once

#include "qsb/fock.hpp"
#include "qsb/ito_algebra.hpp"
#include "qsb/levy.hpp"
#include "qsb/qsc.hpp"
#include "qsb/wiener.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace qsb::io {

using Json = nlohmann::json;

Json to_json(Complex z);
Json to_json(const CVector& v);
Json to_json(const CMatrix& m);
Json to_json(const fock::FockVector& v);
Json to_json(const fock::FockOperator& op);
Json to_json(const ito::ItoMatrix& n);
Json to_json(const qsc::FirstFormulaReport& r);
Json to_json(const qsc::SecondFormulaReport& r);
Json to_json(const qsc::RefinementStudy& s);
Json to_json(const levy::CFTable& t);
Json to_json(const wiener::MonteCarloReport& r);
Json to_json(const wiener::ConditionalReport& r);

/// Accepts [re, im] or a bare real number.
Complex complex_from_json(const Json& j);
/// Accepts an array of complex entries.
CVector vector_from_json(const Json& j);
/// Accepts {"rows", "cols", "data"} or an array of rows.
CMatrix matrix_from_json(const Json& j);
ito::ItoMatrix ito_from_json(const Json& j, int modes);
fock::FockVector fock_vector_from_json(const Json& j);
fock::FockOperator fock_operator_from_json(const Json& j);

/// RFC 4180 field quoting.
std::string csv_field(const std::string& s);
/// Round-trip decimal formatting ("." separator, 17 significant digits).
std::string format_double(double x);

/// Header n_slots,dt_max,err_three_term,err_two_term.
std::string refinement_csv(const qsc::RefinementStudy& s);
/// Header x,re,im,provenance; one row per (table, x).
std::string cf_csv(const std::vector<levy::CFTable>& tables);

}  // namespace qsb::io
