#include "flora/csv.hpp"

#include "flora/error.hpp"
#include "flora/format.hpp"

namespace flora::csv {

namespace {

std::vector<std::string> split_line(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (quoted) throw parse_error("line " + std::to_string(line_no) + ": unterminated quoted field");
  fields.push_back(std::move(current));
  return fields;
}

}  // namespace

std::vector<Row> read_rows(std::istream& in) {
  std::vector<Row> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    rows.push_back({line_no, split_line(line, line_no)});
  }
  return rows;
}

std::vector<Row> read_table(std::istream& in, const std::vector<std::string_view>& expected, std::string_view what) {
  auto rows = read_rows(in);
  std::string want;
  for (const auto& name : expected) {
    if (!want.empty()) want += ',';
    want += name;
  }
  if (rows.empty()) throw parse_error(std::string(what) + ": empty input, expected header '" + want + "'");
  const auto& header = rows.front().fields;
  bool ok = header.size() == expected.size();
  for (std::size_t i = 0; ok && i < header.size(); ++i) ok = trim(header[i]) == expected[i];
  if (!ok) throw parse_error(std::string(what) + ": bad header, expected '" + want + "'");
  rows.erase(rows.begin());
  for (const auto& row : rows) {
    if (row.fields.size() != expected.size()) {
      throw parse_error(std::string(what) + ": line " + std::to_string(row.line) + " has " +
                        std::to_string(row.fields.size()) + " fields, expected " + std::to_string(expected.size()));
    }
  }
  return rows;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace flora::csv
