#pragma once

#include <string>

#include "skewlab/complex_matrix.hpp"

namespace skewlab {

// Matrix wire format used everywhere JSON carries a matrix:
//   {"dim": d, "entries": [[[re, im], ...], ...]}  (row-major)
std::string matrix_to_json_text(const Matrix& m);
Matrix matrix_from_json_text(const std::string& text);

}  // namespace skewlab
