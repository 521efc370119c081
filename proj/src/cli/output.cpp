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

#include "qsb/cli/output.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

namespace qsb::cli {

namespace fs = std::filesystem;

void atomic_write(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw std::runtime_error("cannot rename " + tmp.string() + ": " + ec.message());
    }
}

OutputWriter::OutputWriter(const RunConfig& config, std::string command)
    : dir_(config.out_dir),
      command_(std::move(command)),
      hash_(config.hash()),
      seed_(config.seed),
      config_(config.document) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw ConfigError("cannot create output directory " + dir_.string() + ": " + ec.message());
}

void OutputWriter::write_text(const std::string& name, const std::string& content) {
    atomic_write(dir_ / name, content);
    files_.push_back(name);
}

void OutputWriter::write_json(const std::string& name, Json report) {
    report["config_hash"] = hash_;
    report["seed"] = seed_;
    write_text(name, report.dump(2) + "\n");
}

void OutputWriter::finish(int exit_status) {
    const fs::path path = dir_ / "manifest.json";
    Json manifest = Json::object();
    if (fs::exists(path)) {
        std::ifstream in(path);
        try {
            manifest = Json::parse(in);
        } catch (const Json::parse_error&) {
            manifest = Json::object();
        }
        if (!manifest.is_object()) manifest = Json::object();
    }
    manifest["runs"][command_] = {{"config_hash", hash_},
                                  {"seed", seed_},
                                  {"exit_status", exit_status},
                                  {"files", files_},
                                  {"config", config_}};
    atomic_write(path, manifest.dump(2) + "\n");
}

}  // namespace qsb::cli
