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

#include "qsb/cli/commands.hpp"

#include "qsb/cli/config.hpp"
#include "qsb/cli/output.hpp"
#include "qsb/cli/suites.hpp"
#include "qsb/slot_operator.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <optional>
#include <ostream>
#include <string>

namespace qsb::cli {

namespace {

std::string join(const std::vector<std::string>& names) {
    std::string s;
    for (const auto& n : names) s += (s.empty() ? "" : "|") + n;
    return s;
}

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", x);
    return buf;
}

void print_checks(const Outcome& outcome, std::ostream& out) {
    for (const Check& c : outcome.checks) {
        out << (c.pass ? "PASS " : "FAIL ") << c.name << "  " << sci(c.value) << ' ' << c.relation << ' ';
        if (c.relation == "within") {
            out << c.details.value("center", 0.0) << " +- " << c.threshold;
        } else {
            out << sci(c.threshold);
        }
        out << '\n';
    }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical checks for boson Fock space, quantum stochastic calculus and Levy processes",
                 "qsbench"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    auto* config_opt = app.add_option("--config", config_path, "JSON configuration file");
    auto* out_opt = app.add_option("--out", out_dir, "Output directory");
    auto* seed_opt = app.add_option("--seed", seed, "Root seed (nonnegative integer)");

    std::string name;
    bool drop_correction = false;
    std::size_t n = 0;
    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("suite", name, join(suite_names()))->required();
    verify->add_flag("--drop-correction", drop_correction, "Compare against the two-term second formula");
    auto* cf = app.add_subcommand("cf", "Write characteristic-function tables");
    cf->add_option("kind", name, join(cf_kinds()))->required();
    auto* convergence = app.add_subcommand("convergence", "Run a grid-refinement study");
    convergence->add_option("target", name, join(convergence_targets()))->required();
    auto* sample = app.add_subcommand("sample", "Draw samples and compare with the analytic CF");
    sample->add_option("kind", name, join(sample_kinds()))->required();
    auto* n_opt = sample->add_option("--n", n, "Sample count (default levy.samples)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }

    std::string command;
    try {
        const auto path = config_opt->count() ? std::optional<std::string>(config_path) : std::nullopt;
        const RunConfig config =
            with_overrides(load_config(path), seed_opt->count() ? std::optional<std::uint64_t>(seed) : std::nullopt,
                           out_opt->count() ? std::optional<std::string>(out_dir) : std::nullopt);

        Outcome outcome;
        std::string report;
        if (verify->parsed()) {
            command = "verify " + name;
            outcome = run_verify(name, config, drop_correction);
            report = "verify_" + name + (drop_correction ? "_drop-correction" : "") + ".json";
            if (drop_correction) command += " --drop-correction";
        } else if (cf->parsed()) {
            command = "cf " + name;
            outcome = run_cf(name, config);
            report = "cf_" + name + ".json";
        } else if (convergence->parsed()) {
            command = "convergence " + name;
            outcome = run_convergence(name, config);
            report = "convergence_" + name + ".json";
        } else {
            const std::size_t count =
                n_opt->count() ? n : config.block("levy").at("samples").get<std::size_t>();
            command = "sample " + name;
            outcome = run_sample(name, count, config);
            report = "sample_" + name + ".json";
        }

        OutputWriter writer(config, command);
        for (const auto& [file, content] : outcome.files) writer.write_text(file, content);
        writer.write_json(report, outcome.report);
        const int status = outcome.passed() ? kExitPass : kExitFailure;
        writer.finish(status);

        print_checks(outcome, out);
        out << command << ": " << (status == kExitPass ? "PASS" : "FAIL") << " (config " << config.hash()
            << ", reports in " << writer.directory().string() << ")\n";
        if (const Check* failed = outcome.first_failure()) {
            err << "FAIL: " << command << ": check '" << failed->name << "' value " << sci(failed->value)
                << " violates " << failed->relation << ' ' << sci(failed->threshold) << '\n';
        }
        return status;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const qsc::DimensionLimitError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << (command.empty() ? "" : command + ": ") << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace qsb::cli
