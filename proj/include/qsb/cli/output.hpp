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

// output.hpp: report files for one command invocation. Every file is written
// to a temporary name and renamed into place; manifest.json in the output
// directory records, per command, the config hash, the seed and the files.

#pragma once

#include "qsb/cli/config.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace qsb::cli {

/// Writes `content` to `path` through a temporary file in the same directory.
void atomic_write(const std::filesystem::path& path, const std::string& content);

class OutputWriter {
public:
    /// `command` identifies the invocation, e.g. "verify ccr".
    OutputWriter(const RunConfig& config, std::string command);

    const std::filesystem::path& directory() const noexcept { return dir_; }

    void write_text(const std::string& name, const std::string& content);
    /// Adds "config_hash" and "seed" before writing.
    void write_json(const std::string& name, Json report);
    /// Updates manifest.json with this invocation's entry.
    void finish(int exit_status);

private:
    std::filesystem::path dir_;
    std::string command_;
    std::string hash_;
    std::uint64_t seed_;
    Json config_;
    std::vector<std::string> files_;
};

}  // namespace qsb::cli
