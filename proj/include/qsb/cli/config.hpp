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

// config.hpp: run configuration for the qsbench front-end.
//
// A configuration is a JSON document. Keys that are not given take the
// built-in defaults (see default_config_json()); unknown keys are rejected.
// Step functions are written as {"constant": v} or {"slots": [v_0, ...]},
// complex numbers as [re, im] or a bare real, matrices as arrays of rows.

#pragma once

#include "qsb/grid.hpp"
#include "qsb/ito_algebra.hpp"
#include "qsb/levy.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsb::cli {

using Json = nlohmann::json;

/// Invalid configuration or command-line input (exit status 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct XGrid {
    double min = -3.0;
    double max = 3.0;
    std::size_t count = 25;

    std::vector<double> points() const;
};

struct Thresholds {
    double ccr = 1e-10;
    double inner_product = 1e-10;
    double eigenrelation = 1e-10;
    double weyl_action = 1e-7;
    double weyl_relations = 1e-6;
    double ito = 1e-12;
    double nu_adjoint = 1e-14;
    double first_formula = 1e-8;
    double second_formula = 1e-6;
    double separation = 10.0;
    double slope_center = 1.0;
    double slope_band = 0.2;
    double qsde_exact = 1e-10;
    double weyl_dense = 1e-6;
    double operator_cf = 1e-5;
    double operator_cf_range = 2.0;
    double cf_bound_factor = 4.0;
    double divisibility = 1e-12;
    double z_max = 5.0;
    double split = 1e-12;
};

struct RunConfig {
    int modes = 1;
    int fock_cutoff = 16;
    int slot_cutoff = 3;
    double horizon = 1.0;
    std::size_t n_slots = 6;
    std::size_t dim_limit = 20000;
    std::uint64_t seed = 0;
    XGrid x_grid;
    std::string out_dir;
    Thresholds tolerances;
    /// The resolved document, defaults merged with the user file.
    Json document;

    GridPtr grid() const;
    const Json& block(const std::string& name) const;
    /// FNV-1a of the canonical resolved document without the output directory.
    std::string hash() const;
};

/// The built-in defaults as a JSON document.
const Json& default_config_json();

/// Merges `user` over the defaults and validates the result.
RunConfig config_from_json(const Json& user);
/// Reads a JSON file; std::nullopt gives the defaults.
RunConfig load_config(const std::optional<std::string>& path);
/// Re-validates after command-line overrides of seed or output directory.
RunConfig with_overrides(RunConfig config, std::optional<std::uint64_t> seed,
                         std::optional<std::string> out_dir);

/// {"constant": v} or {"slots": [...]} on the given grid.
StepFunction step_from_json(const Json& j, const GridPtr& grid, int modes);
ito::StrengthFunction strength_from_json(const Json& j, const GridPtr& grid, int modes);
/// Per-slot Hermitian matrices, {"constant": H} or {"slots": [...]}.
std::vector<CMatrix> matrices_from_json(const Json& j, std::size_t slots);
levy::LevyStrengthData levy_data_from_json(const Json& j, const GridPtr& grid);

}  // namespace qsb::cli
