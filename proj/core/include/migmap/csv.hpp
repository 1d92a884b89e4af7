// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace migmap::csv {

/// RFC 4180 style parsing: fields may be double-quoted, quotes escape as "",
/// quoted fields may contain commas and newlines.
std::vector<std::vector<std::string>> parse(std::string_view text);

std::vector<std::vector<std::string>> read_file(const std::filesystem::path& file);

/// Quotes the field only when needed (comma, quote, or newline present).
std::string format_field(std::string_view field);

/// Comma-joined formatted fields without a trailing newline.
std::string format_row(const std::vector<std::string>& fields);

/// Shortest round-trip decimal rendering of a double.
std::string format_double(double value);

}  // namespace migmap::csv
