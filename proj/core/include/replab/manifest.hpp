// Copyright 2026 The replab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <chrono>
#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "replab/config.hpp"

namespace replab {

/// Version string compiled into the orchestrator.
const char *tool_version();

/// Run manifest. The constructor writes manifest.json with status
/// "incomplete" before any data is produced; finalize() rewrites it with the
/// final status, so an interrupted run is recognizable from the manifest alone.
class ManifestWriter {
  public:
    ManifestWriter(std::filesystem::path out_dir, const RunConfig &config);

    nlohmann::json &body() {
        return doc_;
    }
    void add_job(const std::string &path, std::uint64_t seed);
    void add_output(const std::string &file, size_t rows);
    void add_note(const std::string &note);
    /// Writes the current document (status unchanged).
    void flush() const;
    void finalize(bool ok, const std::string &error = {});

  private:
    std::filesystem::path path_;
    nlohmann::json doc_;
    std::chrono::steady_clock::time_point start_;
};

}  // namespace replab
