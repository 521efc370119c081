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

// suites_common.hpp: scenario builders shared by the verify suites and the
// convergence studies.

#pragma once

#include "qsb/cli/config.hpp"
#include "qsb/levy.hpp"
#include "qsb/qsc.hpp"

namespace qsb::cli {

struct FundamentalScenario {
    GridPtr grid;
    StepFunction f;
    StepFunction g;
    ito::StrengthFunction n1;
    ito::StrengthFunction n2;
    ito::StrengthFunction inner;
    ito::StrengthFunction creation;
    qsc::IntegralFamily family;
    /// Family node int_0^t I dLambda_inner.
    std::size_t iterated;
    std::size_t doublings;
};

FundamentalScenario fundamental_scenario(const RunConfig& config);

/// Path with phi from "phi" and U = exp(iH) from the Hermitian "h" matrices.
levy::EuclideanPath weyl_path(const Json& block, const GridPtr& grid, int modes);

}  // namespace qsb::cli
