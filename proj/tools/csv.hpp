// SPDX-License-Identifier: Apache-2.0
//
// CSV emission: comma separator, '.' decimal point, mandatory header row,
// LF line endings, 17 significant digits, atomic write-then-rename.
#pragma once

#include <optional>
#include <string>
#include <vector>

namespace ptqsd::cli {

using CsvCell = std::optional<double>;  // nullopt renders as an empty field
using CsvRow = std::vector<CsvCell>;

std::string format_value(double v);

std::string render_csv(const std::vector<std::string>& header, const std::vector<CsvRow>& rows);

/// Writes content to path via a temporary file and rename, so readers never
/// observe a partial file. Throws InvalidParameter when the path is unusable.
void write_file_atomic(const std::string& path, const std::string& content);

/// Header joined with commas; used both for emission and for --help docs.
std::string schema_line(const std::vector<std::string>& header);

}  // namespace ptqsd::cli
