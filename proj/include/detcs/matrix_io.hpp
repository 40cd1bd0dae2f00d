#pragma once

// Text matrix format:
//
//   # comment lines start with '#'
//   m n
//   re11 im11 re12 im12 ... (2n numbers)
//   ...                      (m rows)
//
// Numbers are written in shortest round-trip form, so parse(serialize(A))
// reproduces A bit for bit.

#include <filesystem>
#include <string>
#include <string_view>

#include "detcs/matrix.hpp"

namespace detcs {

ComplexMatrix parse_matrix(std::string_view text);
std::string serialize_matrix(const ComplexMatrix& a);

ComplexMatrix read_matrix_file(const std::filesystem::path& path);
void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& a);

// Shortest decimal string that parses back to exactly x.
std::string format_double(double x);

}  // namespace detcs
