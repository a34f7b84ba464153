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

#include "replab/table_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "replab/errors.hpp"

namespace replab {

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string &s) {
    if (s == "nan") {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (s == "inf") {
        return std::numeric_limits<double>::infinity();
    }
    if (s == "-inf") {
        return -std::numeric_limits<double>::infinity();
    }
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw DomainError("csv", "not a number: '" + s + "'");
    }
    return v;
}

size_t CsvTable::column(const std::string &name) const {
    for (size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) {
            return i;
        }
    }
    throw DomainError("csv", "missing column '" + name + "'");
}

const std::string &CsvTable::cell(size_t row, const std::string &name) const {
    return rows.at(row).at(column(name));
}

void write_text(const std::filesystem::path &path, const std::string &text) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw DomainError("out", "cannot write " + path.string());
    }
    f << text;
    if (!f) {
        throw DomainError("out", "write failed for " + path.string());
    }
}

std::string read_text(const std::filesystem::path &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw DomainError("in", "cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

namespace {

std::vector<std::string> split(const std::string &line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

std::string join(const std::vector<std::string> &cells) {
    std::string s;
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) {
            s.push_back(',');
        }
        s += cells[i];
    }
    return s;
}

}  // namespace

void write_csv(const std::filesystem::path &path, const CsvTable &table) {
    std::string text = join(table.header) + "\n";
    for (const auto &row : table.rows) {
        if (row.size() != table.header.size()) {
            throw ContractViolation("write_csv: row width differs from header");
        }
        text += join(row) + "\n";
    }
    write_text(path, text);
}

CsvTable read_csv(const std::filesystem::path &path) {
    std::istringstream in(read_text(path));
    CsvTable t;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") {
            continue;
        }
        auto cells = split(line);
        if (t.header.empty()) {
            t.header = std::move(cells);
            continue;
        }
        if (cells.size() != t.header.size()) {
            throw DomainError("csv", path.string() + ":" + std::to_string(lineno) + ": expected " +
                                         std::to_string(t.header.size()) + " fields");
        }
        t.rows.push_back(std::move(cells));
    }
    if (t.header.empty()) {
        throw DomainError("csv", path.string() + ": missing header");
    }
    return t;
}

}  // namespace replab
