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

#include <filesystem>
#include <string>
#include <vector>

namespace replab {

/// Shortest round-trip decimal form; "nan", "inf" and "-inf" for non-finite values.
std::string format_double(double v);

/// Parses format_double output (and ordinary decimal numbers).
double parse_double(const std::string &s);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Column index by name; throws DomainError if absent.
    size_t column(const std::string &name) const;
    const std::string &cell(size_t row, const std::string &name) const;
};

/// Plain comma-separated text, no quoting (fields never contain commas), LF
/// line endings.
void write_csv(const std::filesystem::path &path, const CsvTable &table);
CsvTable read_csv(const std::filesystem::path &path);

void write_text(const std::filesystem::path &path, const std::string &text);
std::string read_text(const std::filesystem::path &path);

}  // namespace replab
