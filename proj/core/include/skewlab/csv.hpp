#pragma once

#include <string>
#include <variant>
#include <vector>

namespace skewlab {

// Shortest decimal form that round-trips a double (17 significant digits).
std::string format_double(double value);

using Cell = std::variant<double, std::string>;

// Header line plus one line per row, comma separated, LF line endings,
// numbers printed with format_double. Emits exactly the same bytes for the
// same inputs.
std::string to_csv(const std::vector<std::string>& columns,
                   const std::vector<std::vector<Cell>>& rows);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace skewlab
