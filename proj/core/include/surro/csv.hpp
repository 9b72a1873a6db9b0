// Copyright 2026 The Surro Authors
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

#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace surro::csv {

/// Splits one line on commas. Whitespace around fields is trimmed; quoting is
/// not supported because every file this toolkit reads is numeric.
std::vector<std::string> split_line(std::string_view line);

/// Parses a decimal floating-point field. Returns false on any trailing
/// garbage or empty input.
bool parse_double(std::string_view field, double& out);

/// Shortest round-trip representation of a double.
std::string format_double(double value);

/// Joins already-formatted fields with commas.
std::string join(const std::vector<std::string>& fields);

/// Opens a file for writing, creating parent directories. Throws IoError.
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace surro::csv
