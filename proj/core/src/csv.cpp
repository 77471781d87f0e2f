#include "skewlab/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "skewlab/errors.hpp"

namespace skewlab {

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string to_csv(const std::vector<std::string>& columns,
                   const std::vector<std::vector<Cell>>& rows) {
  std::string out;
  for (size_t c = 0; c < columns.size(); ++c) {
    if (c > 0) out.push_back(',');
    out += columns[c];
  }
  out.push_back('\n');
  for (const auto& row : rows) {
    if (row.size() != columns.size()) {
      throw InvalidParams("csv row length does not match the header");
    }
    for (size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out.push_back(',');
      if (const double* d = std::get_if<double>(&row[c])) {
        out += format_double(*d);
      } else {
        out += std::get<std::string>(row[c]);
      }
    }
    out.push_back('\n');
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigParse("cannot open '" + path + "' for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw ConfigParse("failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigParse("cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << f.rdbuf();
  return buffer.str();
}

}  // namespace skewlab
