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

#include "replab/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "replab/errors.hpp"

namespace replab {

using nlohmann::json;

namespace {

const std::set<std::string> kTopKeys{
    "command", "seed", "workers",   "out",     "case",     "cases",    "p",       "normalization",
    "pi_floor", "circuit", "rates", "d",       "T",        "rounds",   "orientation", "trials",
    "chunk",    "decoder", "L",     "samples", "schedule", "couplings", "inputs"};

void reject_unknown(const json &obj, const std::set<std::string> &known, const std::string &where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!known.count(it.key())) {
            throw DomainError(where.empty() ? it.key() : where + "." + it.key(), "unknown configuration key");
        }
    }
}

double get_number(const json &v, const std::string &field) {
    if (!v.is_number()) {
        throw DomainError(field, "expected a number");
    }
    return v.get<double>();
}

long long get_integer(const json &v, const std::string &field) {
    if (v.is_number_integer() || v.is_number_unsigned()) {
        return v.get<long long>();
    }
    if (v.is_number_float()) {
        double d = v.get<double>();
        if (std::floor(d) == d && std::fabs(d) < 9e15) {
            return static_cast<long long>(d);
        }
    }
    throw DomainError(field, "expected an integer");
}

std::uint64_t get_seed(const json &v) {
    if (v.is_number_unsigned()) {
        return v.get<std::uint64_t>();
    }
    if (v.is_number_integer() && v.get<long long>() >= 0) {
        return static_cast<std::uint64_t>(v.get<long long>());
    }
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        try {
            size_t pos = 0;
            unsigned long long x = std::stoull(s, &pos, 0);
            if (pos == s.size()) {
                return x;
            }
        } catch (const std::exception &) {
        }
    }
    throw DomainError("seed", "expected an unsigned 64-bit integer");
}

bool get_bool(const json &v, const std::string &field) {
    if (!v.is_boolean()) {
        throw DomainError(field, "expected true or false");
    }
    return v.get<bool>();
}

std::string get_string(const json &v, const std::string &field) {
    if (!v.is_string()) {
        throw DomainError(field, "expected a string");
    }
    return v.get<std::string>();
}

std::vector<double> get_grid(const json &v, const std::string &field) {
    if (v.is_number()) {
        return {v.get<double>()};
    }
    if (v.is_array()) {
        std::vector<double> out;
        for (size_t i = 0; i < v.size(); ++i) {
            out.push_back(get_number(v[i], field + "[" + std::to_string(i) + "]"));
        }
        return out;
    }
    if (v.is_object()) {
        reject_unknown(v, {"start", "stop", "step"}, field);
        if (!v.contains("start") || !v.contains("stop") || !v.contains("step")) {
            throw DomainError(field, "range needs start, stop and step");
        }
        return range_grid(get_number(v["start"], field + ".start"), get_number(v["stop"], field + ".stop"),
                          get_number(v["step"], field + ".step"));
    }
    throw DomainError(field, "expected a number, a list or {start, stop, step}");
}

std::vector<int> get_int_list(const json &v, const std::string &field) {
    std::vector<int> out;
    if (v.is_array()) {
        for (size_t i = 0; i < v.size(); ++i) {
            out.push_back(static_cast<int>(get_integer(v[i], field + "[" + std::to_string(i) + "]")));
        }
    } else {
        out.push_back(static_cast<int>(get_integer(v, field)));
    }
    return out;
}

CircuitNoiseParams get_circuit(const json &v, const std::string &field) {
    if (!v.is_object()) {
        throw DomainError(field, "expected an object with p_sp, p_id, p_1, p_m, p_2");
    }
    reject_unknown(v, {"p_sp", "p_id", "p_1", "p_m", "p_2"}, field);
    CircuitNoiseParams c;
    auto rd = [&](const char *k, double &dst) {
        if (v.contains(k)) {
            dst = get_number(v[k], field + "." + k);
        }
    };
    rd("p_sp", c.p_sp);
    rd("p_id", c.p_id);
    rd("p_1", c.p_1);
    rd("p_m", c.p_m);
    rd("p_2", c.p_2);
    return c;
}

CaseSpec get_case(const json &v, const std::string &field) {
    if (v.is_string()) {
        return preset_case(v.get<std::string>());
    }
    if (!v.is_object()) {
        throw DomainError(field, "expected a preset name or a case object");
    }
    reject_unknown(v, {"name", "q_over_p", "r_over_p", "circuit"}, field);
    std::string name = v.contains("name") ? get_string(v["name"], field + ".name") : "custom";
    if (v.contains("circuit")) {
        if (v.contains("q_over_p") || v.contains("r_over_p")) {
            throw DomainError(field, "give either circuit weights or rate ratios, not both");
        }
        return circuit_case(name, get_circuit(v["circuit"], field + ".circuit"));
    }
    double q = v.contains("q_over_p") ? get_number(v["q_over_p"], field + ".q_over_p") : 1.0;
    double r = v.contains("r_over_p") ? get_number(v["r_over_p"], field + ".r_over_p") : 1.0;
    return ratio_case(name, q, r);
}

}  // namespace

std::vector<double> LadderSpec::resolve(double t_guess) const {
    if (temperatures) {
        return *temperatures;
    }
    double a = lo.value_or(lo_factor * t_guess);
    double b = hi.value_or(hi_factor * t_guess);
    return geometric_ladder(a, b, n);
}

const std::vector<std::string> &subcommands() {
    static const std::vector<std::string> cmds{"rates", "sample", "decode-sweep", "mc-run", "fss", "report"};
    return cmds;
}

json parse_config_text(const std::string &text, const std::string &source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        size_t byte = std::min(e.byte, text.size());
        size_t line = 1;
        size_t col = 1;
        for (size_t i = 0; i + 1 < byte; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw DomainError("config", source + ":" + std::to_string(line) + ":" + std::to_string(col) +
                                        ": JSON syntax error");
    }
}

void set_config_value(json &config, const std::string &dotted_key, const json &value) {
    json *node = &config;
    size_t start = 0;
    while (true) {
        size_t dot = dotted_key.find('.', start);
        std::string part = dotted_key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (part.empty()) {
            throw DomainError(dotted_key, "malformed configuration key");
        }
        if (!node->is_object()) {
            *node = json::object();
        }
        if (dot == std::string::npos) {
            (*node)[part] = value;
            return;
        }
        node = &(*node)[part];
        start = dot + 1;
    }
}

std::vector<double> range_grid(double start, double stop, double step) {
    if (!(step > 0.0) || !(stop >= start)) {
        throw DomainError("p", "range needs step > 0 and stop >= start");
    }
    std::vector<double> out;
    for (long k = 0;; ++k) {
        double v = start + static_cast<double>(k) * step;
        if (v > stop + 1e-9 * step) {
            break;
        }
        out.push_back(std::round(v * 1e12) / 1e12);
        if (out.size() > 100000) {
            throw DomainError("p", "range has too many points");
        }
    }
    return out;
}

std::string to_string(DiagonalOrientation o) {
    return o == DiagonalOrientation::kRising ? "rising" : "falling";
}

std::string to_string(MatchingMode m) {
    return m == MatchingMode::kFolded ? "folded" : "doubled";
}

std::string config_hash(const json &config) {
    std::string s = config.dump();
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

RunConfig parse_run_config(const json &config, const std::string &command) {
    if (!config.is_object()) {
        throw DomainError("config", "top level must be a JSON object");
    }
    reject_unknown(config, kTopKeys, "");
    RunConfig c;
    c.raw = config;
    c.command = command;
    if (c.command.empty() && config.contains("command")) {
        c.command = get_string(config["command"], "command");
    }
    const auto &cmds = subcommands();
    if (std::find(cmds.begin(), cmds.end(), c.command) == cmds.end()) {
        throw DomainError("command", "unknown subcommand '" + c.command + "'");
    }
    c.raw["command"] = c.command;

    if (config.contains("seed")) {
        c.seed = get_seed(config["seed"]);
    }
    if (config.contains("workers")) {
        long long w = get_integer(config["workers"], "workers");
        if (w < 0) {
            throw DomainError("workers", "must be nonnegative");
        }
        c.workers = static_cast<int>(w);
    }
    if (config.contains("out")) {
        c.out_dir = get_string(config["out"], "out");
    }
    if (config.contains("case") && config.contains("cases")) {
        throw DomainError("cases", "give either case or cases");
    }
    if (config.contains("case")) {
        c.cases.push_back(get_case(config["case"], "case"));
    }
    if (config.contains("cases")) {
        const json &v = config["cases"];
        if (!v.is_array()) {
            throw DomainError("cases", "expected a list");
        }
        for (size_t i = 0; i < v.size(); ++i) {
            c.cases.push_back(get_case(v[i], "cases[" + std::to_string(i) + "]"));
        }
    }
    if (config.contains("p")) {
        c.p_grid = get_grid(config["p"], "p");
        for (double p : c.p_grid) {
            if (!(p >= 0.0) || !std::isfinite(p)) {
                throw DomainError("p", "grid values must be finite and nonnegative");
            }
        }
    }
    if (config.contains("normalization")) {
        c.nishimori.normalization = parse_normalization(get_string(config["normalization"], "normalization"));
    }
    if (config.contains("pi_floor") && !config["pi_floor"].is_null()) {
        double f = get_number(config["pi_floor"], "pi_floor");
        if (!(f > 0.0 && f < 1.0)) {
            throw DomainError("pi_floor", "must lie in (0, 1)");
        }
        c.nishimori.pi_floor = f;
    }
    if (config.contains("circuit")) {
        c.circuit = get_circuit(config["circuit"], "circuit");
        c.circuit->validate();
    }
    if (config.contains("rates")) {
        const json &v = config["rates"];
        if (!v.is_object()) {
            throw DomainError("rates", "expected an object with p, q, r");
        }
        reject_unknown(v, {"p", "q", "r"}, "rates");
        EffectiveRates r;
        if (v.contains("p")) r.p = get_number(v["p"], "rates.p");
        if (v.contains("q")) r.q = get_number(v["q"], "rates.q");
        if (v.contains("r")) r.r = get_number(v["r"], "rates.r");
        r.validate();
        c.rates = r;
    }
    if (config.contains("d")) {
        c.d_list = get_int_list(config["d"], "d");
        for (int d : c.d_list) {
            if (d < 2) {
                throw DomainError("d", "code distance must be at least 2");
            }
        }
    }
    if (config.contains("T") && config.contains("rounds")) {
        throw DomainError("rounds", "give either T or rounds");
    }
    for (const char *key : {"T", "rounds"}) {
        if (config.contains(key) && !config[key].is_null()) {
            long long t = get_integer(config[key], key);
            if (t < 1) {
                throw DomainError(key, "need at least one round");
            }
            c.rounds = static_cast<int>(t);
        }
    }
    if (config.contains("orientation")) {
        std::string o = get_string(config["orientation"], "orientation");
        if (o == "rising") {
            c.orientation = DiagonalOrientation::kRising;
        } else if (o == "falling") {
            c.orientation = DiagonalOrientation::kFalling;
        } else {
            throw DomainError("orientation", "expected 'rising' or 'falling'");
        }
    }
    if (config.contains("trials")) {
        long long t = get_integer(config["trials"], "trials");
        if (t < 1) {
            throw DomainError("trials", "need at least one trial");
        }
        c.trials = static_cast<std::uint64_t>(t);
    }
    if (config.contains("chunk")) {
        long long t = get_integer(config["chunk"], "chunk");
        if (t < 1) {
            throw DomainError("chunk", "must be positive");
        }
        c.chunk = static_cast<std::uint64_t>(t);
    }
    if (config.contains("decoder")) {
        const json &v = config["decoder"];
        if (!v.is_object()) {
            throw DomainError("decoder", "expected an object");
        }
        reject_unknown(v, {"mode", "prune"}, "decoder");
        if (v.contains("mode")) {
            std::string m = get_string(v["mode"], "decoder.mode");
            if (m == "folded") {
                c.decoder.mode = MatchingMode::kFolded;
            } else if (m == "doubled") {
                c.decoder.mode = MatchingMode::kDoubled;
            } else {
                throw DomainError("decoder.mode", "expected 'folded' or 'doubled'");
            }
        }
        if (v.contains("prune")) {
            c.decoder.prune = get_bool(v["prune"], "decoder.prune");
        }
    }
    if (config.contains("L")) {
        c.L_list = get_int_list(config["L"], "L");
        for (int L : c.L_list) {
            if (L < 2) {
                throw DomainError("L", "lattice size must be at least 2");
            }
        }
    }
    if (config.contains("samples")) {
        long long s = get_integer(config["samples"], "samples");
        if (s < 1) {
            throw DomainError("samples", "need at least one disorder sample");
        }
        c.samples = static_cast<int>(s);
    }
    if (config.contains("schedule")) {
        const json &v = config["schedule"];
        if (!v.is_object()) {
            throw DomainError("schedule", "expected an object");
        }
        reject_unknown(v,
                       {"n_met", "swap_rounds", "discard_fraction", "measure_every", "bins", "both_axes",
                        "temperatures", "ladder"},
                       "schedule");
        McSchedule &s = c.schedule;
        if (v.contains("n_met")) s.n_met = static_cast<int>(get_integer(v["n_met"], "schedule.n_met"));
        if (v.contains("swap_rounds")) {
            s.swap_rounds = static_cast<int>(get_integer(v["swap_rounds"], "schedule.swap_rounds"));
        }
        if (v.contains("discard_fraction")) {
            s.discard_fraction = get_number(v["discard_fraction"], "schedule.discard_fraction");
        }
        if (v.contains("measure_every")) {
            s.measure_every = static_cast<int>(get_integer(v["measure_every"], "schedule.measure_every"));
        }
        if (v.contains("bins")) s.bins = static_cast<int>(get_integer(v["bins"], "schedule.bins"));
        if (v.contains("both_axes")) s.both_axes = get_bool(v["both_axes"], "schedule.both_axes");
        if (v.contains("temperatures")) {
            c.ladder.temperatures = get_grid(v["temperatures"], "schedule.temperatures");
        }
        if (v.contains("ladder")) {
            const json &l = v["ladder"];
            if (!l.is_object()) {
                throw DomainError("schedule.ladder", "expected an object");
            }
            reject_unknown(l, {"lo", "hi", "lo_factor", "hi_factor", "n"}, "schedule.ladder");
            if (l.contains("lo")) c.ladder.lo = get_number(l["lo"], "schedule.ladder.lo");
            if (l.contains("hi")) c.ladder.hi = get_number(l["hi"], "schedule.ladder.hi");
            if (l.contains("lo_factor")) c.ladder.lo_factor = get_number(l["lo_factor"], "schedule.ladder.lo_factor");
            if (l.contains("hi_factor")) c.ladder.hi_factor = get_number(l["hi_factor"], "schedule.ladder.hi_factor");
            if (l.contains("n")) c.ladder.n = static_cast<int>(get_integer(l["n"], "schedule.ladder.n"));
        }
        // Check everything except the ladder, which depends on the grid point.
        McSchedule probe = s;
        probe.temperatures = {1.0};
        probe.validate();
    }
    if (config.contains("couplings")) {
        const json &v = config["couplings"];
        if (!v.is_object()) {
            throw DomainError("couplings", "expected an object with J1, J2, J3");
        }
        reject_unknown(v, {"J1", "J2", "J3"}, "couplings");
        std::array<double, 3> j{1.0, 1.0, 0.0};
        if (v.contains("J1")) j[0] = get_number(v["J1"], "couplings.J1");
        if (v.contains("J2")) j[1] = get_number(v["J2"], "couplings.J2");
        if (v.contains("J3")) j[2] = get_number(v["J3"], "couplings.J3");
        c.couplings = j;
    }
    if (config.contains("inputs")) {
        const json &v = config["inputs"];
        if (v.is_string()) {
            c.inputs.push_back(v.get<std::string>());
        } else if (v.is_array()) {
            for (size_t i = 0; i < v.size(); ++i) {
                c.inputs.push_back(get_string(v[i], "inputs[" + std::to_string(i) + "]"));
            }
        } else {
            throw DomainError("inputs", "expected a path or a list of paths");
        }
    }
    return c;
}

}  // namespace replab
