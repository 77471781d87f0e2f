#pragma once

#include <json.hpp>

#include "skewlab/complex_matrix.hpp"

// Internal helpers shared by the JSON-facing translation units; the public
// API only exchanges JSON text so the vendored parser never leaks into
// installed headers.
namespace skewlab::detail {

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

}  // namespace skewlab::detail
