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

#include "qsb/cli/config.hpp"

#include "qsb/fock.hpp"
#include "qsb/random.hpp"
#include "qsb/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace qsb::cli {

namespace {

constexpr std::size_t kMaxDimLimit = std::size_t{1} << 22;

constexpr const char* kDefaults = R"json(
{
  "d": 1,
  "fock_cutoff": 16,
  "slot_cutoff": 3,
  "grid": {"T": 1.0, "n_slots": 6},
  "dim_limit": 20000,
  "seed": 20260416,
  "x_grid": {"min": -3.0, "max": 3.0, "count": 25},
  "out": "qsbench_out",
  "tolerances": {
    "ccr": 1e-10,
    "inner_product": 1e-10,
    "eigenrelation": 1e-10,
    "weyl_action": 1e-7,
    "weyl_relations": 1e-6,
    "ito": 1e-12,
    "nu_adjoint": 1e-14,
    "first_formula": 1e-8,
    "second_formula": 1e-6,
    "separation": 10.0,
    "slope_center": 1.0,
    "slope_band": 0.2,
    "qsde_exact": 1e-10,
    "weyl_dense": 1e-6,
    "operator_cf": 1e-5,
    "operator_cf_range": 2.0,
    "cf_bound_factor": 4.0,
    "divisibility": 1e-12,
    "z_max": 5.0,
    "split": 1e-12
  },
  "ccr": {"d": 2, "cutoff": 8, "draws": 50, "scale": 1.0},
  "exponential": {"cutoff": 20, "draws": 20, "radius": 1.0},
  "weyl": {
    "d": 2,
    "radius": 0.5,
    "relation_radius": 0.3,
    "probe_radius": 0.5,
    "probes": 8,
    "draws": 10,
    "cutoffs": [8, 10, 12, 14, 16]
  },
  "ito_algebra": {"d": 2, "triples": 1000, "scale": 1.0},
  "fundamental": {
    "f": {"constant": [0.15]},
    "g": {"constant": [[0.09, 0.12]]},
    "n1": {"constant": {"alpha": [0.1, 0.2], "bra": [[0.3, -0.1]], "ket": [[0.2, 0.1]],
                        "op": [[[0.4, 0.1]]]}},
    "n2": {"constant": {"alpha": [-0.2, 0.1], "bra": [[0.1, 0.2]], "ket": [[-0.3, 0.2]],
                        "op": [[[0.2, -0.3]]]}},
    "inner": {"constant": {"alpha": [0.5, 0.0], "ket": [[0.4, 0.2]], "op": [[[0.3, 0.0]]]}},
    "creation": {"constant": {"ket": [1.0]}},
    "doublings": 4
  },
  "weyl_process": {
    "d": 1,
    "T": 1.0,
    "n_slots": 4,
    "slot_cutoff": 8,
    "f": {"constant": [0.4]},
    "g": {"constant": [[0.2, -0.3]]},
    "phi": {"slots": [[0.5], [[0.2, 0.3]], [-0.4], [[0.0, 0.6]]]},
    "h": {"slots": [[[0.7]], [[-0.3]], [[1.1]], [[0.0]]]},
    "doublings": 4
  },
  "levy": {
    "T": 1.0,
    "n_slots": 1,
    "type1": {"psi": {"constant": [0.6, 0.4]},
              "h": {"constant": [[1.0, 0.0], [0.0, -0.5]]}},
    "type2": {"psi": {"constant": [0.4, 0.5]},
              "h": {"constant": [[0.0, 0.0], [0.0, 1.0]]}},
    "drift": 0.0,
    "samples": 100000,
    "operator_cutoff": 14,
    "divisibility_n": [2, 4, 8, 16]
  },
  "cf": {
    "gauss": {"u": [0.6, [0.2, 0.1]]},
    "poissonfield": {"u": [0.4, 0.3], "h": [[1.0, 0.0], [0.0, -2.0]]}
  },
  "wiener": {
    "T": 1.0,
    "n_slots": 8,
    "u": {"slots": [0.8, 0.6, 0.4, 0.2, 0.0, -0.2, -0.4, -0.6]},
    "v": {"constant": -0.5},
    "paths": 100000,
    "t_condition": 0.5,
    "outer": 20,
    "inner": 2000
  }
}
)json";

bool is_value_object(const Json& j) {
    if (!j.is_object()) return false;
    for (const char* k : {"constant", "slots", "alpha", "bra", "ket", "op"}) {
        if (j.contains(k)) return true;
    }
    return false;
}

void merge_into(Json& base, const Json& user, const std::string& path) {
    if (!user.is_object()) throw ConfigError("config: " + (path.empty() ? "document" : path) +
                                             " must be an object");
    for (auto it = user.begin(); it != user.end(); ++it) {
        const std::string key = path.empty() ? it.key() : path + "." + it.key();
        if (!base.contains(it.key())) throw ConfigError("config: unknown key '" + key + "'");
        Json& slot = base[it.key()];
        if (slot.is_object() && !is_value_object(slot)) {
            merge_into(slot, it.value(), key);
        } else {
            slot = it.value();
        }
    }
}

template <typename T>
T get_as(const Json& j, const std::string& what) {
    try {
        return j.get<T>();
    } catch (const Json::exception&) {
        throw ConfigError("config: '" + what + "' has the wrong type: " + j.dump());
    }
}

int get_int(const Json& block, const std::string& key, const std::string& path, int lo) {
    const Json& j = block.at(key);
    if (!j.is_number_integer()) throw ConfigError("config: '" + path + "' must be an integer");
    const auto v = j.get<long long>();
    if (v < lo || v > std::numeric_limits<int>::max()) {
        throw ConfigError("config: '" + path + "' must be >= " + std::to_string(lo));
    }
    return static_cast<int>(v);
}

std::size_t get_size(const Json& block, const std::string& key, const std::string& path,
                     std::size_t lo) {
    const Json& j = block.at(key);
    if (!j.is_number_integer() || j.get<long long>() < 0) {
        throw ConfigError("config: '" + path + "' must be a nonnegative integer");
    }
    const auto v = j.get<std::size_t>();
    if (v < lo) throw ConfigError("config: '" + path + "' must be >= " + std::to_string(lo));
    return v;
}

double get_positive(const Json& block, const std::string& key, const std::string& path) {
    const Json& j = block.at(key);
    if (!j.is_number()) throw ConfigError("config: '" + path + "' must be a number");
    const double v = j.get<double>();
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("config: '" + path + "' must be > 0");
    return v;
}

/// slot_dim^slots, saturating at max.
std::size_t power_dim(std::size_t base, std::size_t slots) {
    std::size_t d = 1;
    for (std::size_t i = 0; i < slots; ++i) {
        if (d > std::numeric_limits<std::size_t>::max() / base) return std::numeric_limits<std::size_t>::max();
        d *= base;
    }
    return d;
}

void require_dim(std::size_t dim, std::size_t limit, const std::string& what) {
    if (dim > limit) {
        throw ConfigError("config: " + what + " has dimension " + std::to_string(dim) +
                          " above dim_limit " + std::to_string(limit));
    }
}

Thresholds parse_thresholds(const Json& j) {
    Thresholds t;
    const auto read = [&](const char* key, double& field) {
        field = get_positive(j, key, std::string("tolerances.") + key);
    };
    read("ccr", t.ccr);
    read("inner_product", t.inner_product);
    read("eigenrelation", t.eigenrelation);
    read("weyl_action", t.weyl_action);
    read("weyl_relations", t.weyl_relations);
    read("ito", t.ito);
    read("nu_adjoint", t.nu_adjoint);
    read("first_formula", t.first_formula);
    read("second_formula", t.second_formula);
    read("separation", t.separation);
    read("slope_center", t.slope_center);
    read("slope_band", t.slope_band);
    read("qsde_exact", t.qsde_exact);
    read("weyl_dense", t.weyl_dense);
    read("operator_cf", t.operator_cf);
    read("operator_cf_range", t.operator_cf_range);
    read("cf_bound_factor", t.cf_bound_factor);
    read("divisibility", t.divisibility);
    read("z_max", t.z_max);
    read("split", t.split);
    return t;
}

RunConfig validate(Json doc) {
    RunConfig c;
    c.modes = get_int(doc, "d", "d", 1);
    c.fock_cutoff = get_int(doc, "fock_cutoff", "fock_cutoff", 1);
    c.slot_cutoff = get_int(doc, "slot_cutoff", "slot_cutoff", 1);
    c.horizon = get_positive(doc.at("grid"), "T", "grid.T");
    c.n_slots = get_size(doc.at("grid"), "n_slots", "grid.n_slots", 1);
    c.dim_limit = get_size(doc, "dim_limit", "dim_limit", 1);
    if (c.dim_limit > kMaxDimLimit) {
        throw ConfigError("config: dim_limit must be <= " + std::to_string(kMaxDimLimit));
    }
    const Json& seed = doc.at("seed");
    if (!seed.is_number_unsigned()) throw ConfigError("config: 'seed' must be a nonnegative integer");
    c.seed = seed.get<std::uint64_t>();
    const Json& xg = doc.at("x_grid");
    c.x_grid.min = get_as<double>(xg.at("min"), "x_grid.min");
    c.x_grid.max = get_as<double>(xg.at("max"), "x_grid.max");
    c.x_grid.count = get_size(xg, "count", "x_grid.count", 1);
    if (!(c.x_grid.min <= c.x_grid.max)) throw ConfigError("config: x_grid.min must be <= x_grid.max");
    if (!doc.at("out").is_string()) throw ConfigError("config: 'out' must be a string");
    c.out_dir = doc.at("out").get<std::string>();
    c.tolerances = parse_thresholds(doc.at("tolerances"));

    const std::size_t slot_dim = fock::FockBasis::expected_dim(c.modes, c.slot_cutoff);
    require_dim(fock::FockBasis::expected_dim(c.modes, c.fock_cutoff), c.dim_limit, "the Fock basis");
    require_dim(power_dim(slot_dim, c.n_slots), c.dim_limit, "the slot space");
    const Json& ccr = doc.at("ccr");
    require_dim(fock::FockBasis::expected_dim(get_int(ccr, "d", "ccr.d", 1),
                                              get_int(ccr, "cutoff", "ccr.cutoff", 2)),
                c.dim_limit, "the ccr basis");
    const Json& weyl = doc.at("weyl");
    const int weyl_d = get_int(weyl, "d", "weyl.d", 1);
    require_dim(fock::FockBasis::expected_dim(weyl_d, c.fock_cutoff), c.dim_limit, "the weyl basis");
    for (const Json& k : weyl.at("cutoffs")) {
        if (!k.is_number_integer() || k.get<int>() < 1) throw ConfigError("config: weyl.cutoffs must be positive integers");
        require_dim(fock::FockBasis::expected_dim(weyl_d, k.get<int>()), c.dim_limit, "a weyl.cutoffs basis");
    }
    const Json& wp = doc.at("weyl_process");
    require_dim(power_dim(fock::FockBasis::expected_dim(get_int(wp, "d", "weyl_process.d", 1),
                                                        get_int(wp, "slot_cutoff",
                                                                "weyl_process.slot_cutoff", 1)),
                          get_size(wp, "n_slots", "weyl_process.n_slots", 1)),
                c.dim_limit, "the weyl_process slot space");
    c.document = std::move(doc);
    return c;
}

}  // namespace

std::vector<double> XGrid::points() const {
    if (count == 1) return {min};
    return levy::linspace(min, max, count);
}

GridPtr RunConfig::grid() const { return make_grid(TimeGrid::uniform(horizon, n_slots)); }

const Json& RunConfig::block(const std::string& name) const {
    if (!document.contains(name)) throw ConfigError("config: missing block '" + name + "'");
    return document.at(name);
}

std::string RunConfig::hash() const {
    Json copy = document;
    copy.erase("out");
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(rng::fnv1a64(copy.dump())));
    return buf;
}

const Json& default_config_json() {
    static const Json doc = Json::parse(kDefaults);
    return doc;
}

RunConfig config_from_json(const Json& user) {
    Json doc = default_config_json();
    merge_into(doc, user, "");
    try {
        return validate(std::move(doc));
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

RunConfig load_config(const std::optional<std::string>& path) {
    if (!path) return config_from_json(Json::object());
    std::ifstream in(*path);
    if (!in) throw ConfigError("config: cannot open '" + *path + "'");
    Json user;
    try {
        user = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ConfigError("config: '" + *path + "' is not valid JSON: " + e.what());
    }
    return config_from_json(user);
}

RunConfig with_overrides(RunConfig config, std::optional<std::uint64_t> seed,
                         std::optional<std::string> out_dir) {
    if (seed) config.document["seed"] = *seed;
    if (out_dir) config.document["out"] = *out_dir;
    return validate(std::move(config.document));
}

namespace {

std::vector<Json> per_slot(const Json& j, std::size_t slots, const std::string& what) {
    if (!j.is_object() || j.size() != 1 || !(j.contains("constant") || j.contains("slots"))) {
        throw ConfigError("config: " + what + " must be {\"constant\": ...} or {\"slots\": [...]}");
    }
    if (j.contains("constant")) return std::vector<Json>(slots, j.at("constant"));
    const Json& s = j.at("slots");
    if (!s.is_array() || s.size() != slots) {
        throw ConfigError("config: " + what + " needs " + std::to_string(slots) + " slot values");
    }
    return std::vector<Json>(s.begin(), s.end());
}

CVector parse_vector(const Json& j) {
    if (j.is_number()) return CVector::Constant(1, Complex(j.get<double>(), 0.0));
    return io::vector_from_json(j);
}

}  // namespace

StepFunction step_from_json(const Json& j, const GridPtr& grid, int modes) {
    try {
        std::vector<CVector> values;
        for (const Json& v : per_slot(j, grid->slot_count(), "step function")) {
            values.push_back(parse_vector(v));
            if (modes > 0 && values.back().size() != modes) {
                throw ConfigError("config: step function value has " +
                                  std::to_string(values.back().size()) + " entries, expected " +
                                  std::to_string(modes));
            }
        }
        return StepFunction(grid, std::move(values));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

ito::StrengthFunction strength_from_json(const Json& j, const GridPtr& grid, int modes) {
    try {
        std::vector<ito::ItoMatrix> values;
        for (const Json& v : per_slot(j, grid->slot_count(), "strength")) {
            values.push_back(io::ito_from_json(v, modes));
        }
        return ito::StrengthFunction(grid, std::move(values));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

std::vector<CMatrix> matrices_from_json(const Json& j, std::size_t slots) {
    try {
        std::vector<CMatrix> out;
        for (const Json& v : per_slot(j, slots, "matrix function")) out.push_back(io::matrix_from_json(v));
        return out;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

levy::LevyStrengthData levy_data_from_json(const Json& j, const GridPtr& grid) {
    const StepFunction psi = step_from_json(j.at("psi"), grid, 0);
    try {
        return levy::LevyStrengthData(grid, psi.values(), matrices_from_json(j.at("h"), grid->slot_count()));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

}  // namespace qsb::cli
