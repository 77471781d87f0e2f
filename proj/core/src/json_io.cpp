#include "skewlab/json_io.hpp"

#include "json_detail.hpp"

namespace skewlab {

namespace detail {

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back({m(r, c).real(), m(r, c).imag()});
    }
    entries.push_back(std::move(row));
  }
  return nlohmann::json{{"dim", m.rows()}, {"entries", std::move(entries)}};
}

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
    throw ConfigParse("matrix JSON must be {\"dim\": d, \"entries\": [...]}");
  }
  const auto d = j.at("dim").get<long>();
  if (d < 1) throw ConfigParse("matrix dim must be >= 1");
  const auto& entries = j.at("entries");
  if (!entries.is_array() || static_cast<long>(entries.size()) != d) {
    throw ConfigParse("matrix entries must have dim rows");
  }
  Matrix m(d, d);
  for (long r = 0; r < d; ++r) {
    const auto& row = entries.at(r);
    if (!row.is_array() || static_cast<long>(row.size()) != d) {
      throw ConfigParse("matrix row " + std::to_string(r) +
                        " must have dim entries");
    }
    for (long c = 0; c < d; ++c) {
      const auto& cell = row.at(c);
      if (!cell.is_array() || cell.size() != 2) {
        throw ConfigParse("matrix entry must be [re, im]");
      }
      m(r, c) = Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
    }
  }
  require_finite(m);
  return m;
}

}  // namespace detail

std::string matrix_to_json_text(const Matrix& m) {
  return detail::matrix_to_json(m).dump();
}

Matrix matrix_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigParse(std::string("matrix JSON parse error: ") + e.what());
  }
  return detail::matrix_from_json(j);
}

}  // namespace skewlab
