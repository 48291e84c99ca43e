#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace flora::csv {

struct Row {
  std::size_t line = 0;  // 1-based line number in the source
  std::vector<std::string> fields;
};

// Reads every non-blank line. Accepts LF or CRLF, a leading UTF-8 BOM, and double-quoted fields.
std::vector<Row> read_rows(std::istream& in);

// Reads rows and checks the first one against `expected` (exact names, exact order).
// Returns the data rows only.
std::vector<Row> read_table(std::istream& in, const std::vector<std::string_view>& expected, std::string_view what);

std::string escape(std::string_view field);

}  // namespace flora::csv
