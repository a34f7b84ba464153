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

#include "replab/manifest.hpp"

#include "replab/table_io.hpp"

#ifndef REPLAB_VERSION
#define REPLAB_VERSION "unknown"
#endif

namespace replab {

const char *tool_version() {
    return REPLAB_VERSION;
}

ManifestWriter::ManifestWriter(std::filesystem::path out_dir, const RunConfig &config)
    : path_(std::move(out_dir) / "manifest.json"), start_(std::chrono::steady_clock::now()) {
    doc_ = {
        {"tool", "replab"},
        {"version", tool_version()},
        {"command", config.command},
        {"status", "incomplete"},
        {"config", config.raw},
        {"config_hash", config_hash(config.raw)},
        {"master_seed", config.seed},
        {"normalization", to_string(config.nishimori.normalization)},
        {"pi_floor", config.nishimori.pi_floor ? nlohmann::json(*config.nishimori.pi_floor) : nlohmann::json()},
        {"grid_points", nlohmann::json::array()},
        {"jobs", nlohmann::json::array()},
        {"outputs", nlohmann::json::object()},
        {"notes", nlohmann::json::array()},
    };
    flush();
}

void ManifestWriter::add_job(const std::string &path, std::uint64_t seed) {
    doc_["jobs"].push_back({{"path", path}, {"seed", seed}});
}

void ManifestWriter::add_output(const std::string &file, size_t rows) {
    doc_["outputs"][file] = {{"rows", rows}};
}

void ManifestWriter::add_note(const std::string &note) {
    doc_["notes"].push_back(note);
}

void ManifestWriter::flush() const {
    write_text(path_, doc_.dump(2) + "\n");
}

void ManifestWriter::finalize(bool ok, const std::string &error) {
    doc_["status"] = ok ? "complete" : "failed";
    if (!error.empty()) {
        doc_["error"] = error;
    }
    doc_["wall_clock_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    flush();
}

}  // namespace replab
