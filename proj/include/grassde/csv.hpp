#pragma once

#include <string>
#include <string_view>

#include "grassde/linalg.hpp"

namespace grassde {

/// Parses a headerless CSV matrix: one row per line, comma-separated decimal
/// values. Blank lines are ignored; rows must all have the same width.
Matrix parse_csv_matrix(std::string_view text);

Matrix read_csv_matrix(const std::string& path);

/// Writes with 17 significant digits so values round-trip exactly.
std::string format_csv_matrix(const Matrix& m);

}  // namespace grassde
