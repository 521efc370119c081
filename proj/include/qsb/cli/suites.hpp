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

// suites.hpp: the numerical work behind each command, returning named checks
// and report bodies. No file or console output happens here.

#pragma once

#include "qsb/cli/config.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qsb::cli {

struct Check {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    std::string relation;  // "<", "<=", ">=" or "within"
    bool pass = false;
    Json details = Json::object();
};

Check below(std::string name, double value, double threshold);
Check at_most(std::string name, double value, double threshold);
Check at_least(std::string name, double value, double threshold);
/// |value - center| <= band; `threshold` holds the band.
Check within(std::string name, double value, double center, double band);

Json to_json(const Check& c);

struct Outcome {
    std::vector<Check> checks;
    Json report = Json::object();
    /// Extra files (name, content) such as CSV tables or sample lists.
    std::vector<std::pair<std::string, std::string>> files;

    bool passed() const;
    /// Null when every check passed.
    const Check* first_failure() const;
};

const std::vector<std::string>& suite_names();
const std::vector<std::string>& cf_kinds();
const std::vector<std::string>& convergence_targets();
const std::vector<std::string>& sample_kinds();

/// Throws ConfigError for an unknown name.
Outcome run_verify(const std::string& suite, const RunConfig& config, bool drop_correction);
Outcome run_cf(const std::string& kind, const RunConfig& config);
Outcome run_convergence(const std::string& target, const RunConfig& config);
/// n must be at least 1.
Outcome run_sample(const std::string& kind, std::size_t n, const RunConfig& config);

}  // namespace qsb::cli
