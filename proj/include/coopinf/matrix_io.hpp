#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "coopinf/matrix.hpp"

namespace coopinf {

enum class MatrixFormat { kCsv, kJson };

/// Headerless CSV: one line per data set, comma-separated decimal entries.
Matrix read_matrix_csv(std::istream& in);

/// JSON object {"concepts": [...], "datasets": [...], "dataset_sizes": [...],
/// "entries": [[...]]}. Only "entries" is required; the label/size fields,
/// when present, become the matrix's SpaceIndex (missing labels default to
/// "d1..", "h1..", missing sizes to 1).
Matrix read_matrix_json(std::istream& in);

Matrix read_matrix_file(const std::filesystem::path& path, MatrixFormat format);

/// Entries are written with 17 significant digits, so a written matrix
/// re-parses to an entrywise-equal matrix.
void write_matrix_csv(std::ostream& out, const Matrix& m);
void write_matrix_json(std::ostream& out, const Matrix& m);
void write_matrix_file(const std::filesystem::path& path, const Matrix& m,
                       MatrixFormat format);

} // namespace coopinf
