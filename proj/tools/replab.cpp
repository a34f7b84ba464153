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

// replab command-line driver.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "replab/commands.hpp"
#include "replab/config.hpp"
#include "replab/errors.hpp"
#include "replab/manifest.hpp"
#include "replab/table_io.hpp"

namespace {

using nlohmann::json;

// Values on the command line are JSON when they parse, plain strings otherwise.
json loose_json(const std::string &text) {
    json v = json::parse(text, nullptr, false);
    return v.is_discarded() ? json(text) : v;
}

struct Overrides {
    std::string config_path;
    std::string out;
    std::optional<int> workers;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> sets;
    std::vector<std::string> cases;
    std::string p;
    std::string d;
    std::string L;
    std::optional<int> rounds;
    std::optional<std::uint64_t> trials;
    std::optional<int> samples;
    std::string orientation;
    std::string normalization;
    std::vector<std::string> inputs;
};

void add_common(CLI::App *sub, Overrides &o) {
    sub->add_option("--config", o.config_path, "JSON run configuration")->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "output directory");
    sub->add_option("--workers", o.workers, "worker threads (default: REPLAB_WORKERS or 1)")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "master seed");
    sub->add_option("--set", o.sets, "override a config key, KEY=JSON (dotted keys allowed)");
}

json build_config(const std::string &command, const Overrides &o) {
    json cfg = json::object();
    if (!o.config_path.empty()) {
        cfg = replab::parse_config_text(replab::read_text(o.config_path), o.config_path);
        if (!cfg.is_object()) {
            throw replab::DomainError("config", o.config_path + ": top level must be an object");
        }
    }
    if (cfg.contains("command") && cfg["command"] != command) {
        throw replab::DomainError("command", "config is for '" + cfg["command"].get<std::string>() +
                                                 "', invoked as '" + command + "'");
    }
    cfg.erase("command");
    auto set = [&](const std::string &key, const json &v) { replab::set_config_value(cfg, key, v); };
    if (!o.out.empty()) set("out", o.out);
    if (o.workers) set("workers", *o.workers);
    if (o.seed) set("seed", *o.seed);
    if (!o.cases.empty()) set("cases", o.cases);
    if (!o.p.empty()) set("p", loose_json(o.p));
    if (!o.d.empty()) set("d", loose_json(o.d));
    if (!o.L.empty()) set("L", loose_json(o.L));
    if (o.rounds) set("rounds", *o.rounds);
    if (o.trials) set("trials", *o.trials);
    if (o.samples) set("samples", *o.samples);
    if (!o.orientation.empty()) set("orientation", o.orientation);
    if (!o.normalization.empty()) set("normalization", o.normalization);
    if (!o.inputs.empty()) set("inputs", o.inputs);
    for (const std::string &kv : o.sets) {
        auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw replab::DomainError("--set", "expected KEY=VALUE, got '" + kv + "'");
        }
        set(kv.substr(0, eq), loose_json(kv.substr(eq + 1)));
    }
    return cfg;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Repetition-code thresholds from circuit noise: decoding sweeps and spin-glass Monte Carlo"};
    app.set_version_flag("--version", replab::tool_version());
    app.require_subcommand(1);

    Overrides o;
    const std::vector<std::pair<std::string, std::string>> commands{
        {"rates", "effective rates, Nishimori couplings and temperature"},
        {"sample", "one disorder sample with its chain, syndrome and decoding"},
        {"decode-sweep", "MWPM logical error rates over a rate grid"},
        {"mc-run", "parallel-tempering Monte Carlo of the disordered Ising model"},
        {"fss", "crossing analysis of mc-run outputs"},
        {"report", "bundle run directories into a single report"},
    };
    for (const auto &[name, help] : commands) {
        CLI::App *sub = app.add_subcommand(name, help);
        add_common(sub, o);
        if (name == "fss" || name == "report") {
            sub->add_option("--in", o.inputs, "run directories or CSV files")->required();
            continue;
        }
        sub->add_option("--case", o.cases, "preset case (I, II, III, IV)");
        sub->add_option("--p", o.p, "rate grid: number, JSON list or {start,stop,step}");
        sub->add_option("--normalization", o.normalization, "coupling normalization");
        if (name == "sample" || name == "decode-sweep") {
            sub->add_option("--d", o.d, "distance or JSON list of distances");
            sub->add_option("--rounds", o.rounds, "syndrome rounds (default: d)");
            sub->add_option("--orientation", o.orientation, "diagonal orientation (rising, falling)");
        }
        if (name == "decode-sweep") {
            sub->add_option("--trials", o.trials, "trials per (case, d, p)");
        }
        if (name == "mc-run") {
            sub->add_option("--L", o.L, "linear size or JSON list of sizes");
            sub->add_option("--samples", o.samples, "disorder samples per (case, p, L)");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? replab::kExitOk : replab::kExitUserError;
    }

    CLI::App *sub = app.get_subcommands().front();
    const std::string command = sub->get_name();
    replab::RunConfig config;
    try {
        config = replab::parse_run_config(build_config(command, o), command);
    } catch (const replab::DomainError &e) {
        std::cerr << "replab: error: " << e.what() << "\n";
        return replab::kExitUserError;
    } catch (const std::exception &e) {
        std::cerr << "replab: error: " << e.what() << "\n";
        return replab::kExitUserError;
    }
    return replab::run_command(config, std::cout, std::cerr);
}
