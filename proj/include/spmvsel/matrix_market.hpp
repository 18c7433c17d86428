#pragma once

#include <filesystem>
#include <iosfwd>

#include "spmvsel/coo.hpp"

namespace spmvsel {

/// Reads a "matrix coordinate" Matrix Market stream (real, integer or
/// pattern; general or symmetric) into canonical COO. Symmetric storage is
/// expanded, pattern entries become 1.0, duplicates are summed.
/// Throws ParseError carrying the offending line number.
CooMatrix read_matrix_market(std::istream& in);
CooMatrix read_matrix_market(const std::filesystem::path& path);

/// Writes "coordinate real general" with 17 significant digits.
void write_matrix_market(std::ostream& out, const CooMatrix& a);
void write_matrix_market(const std::filesystem::path& path, const CooMatrix& a);

} // namespace spmvsel
