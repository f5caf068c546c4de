#include "jrank/csv.hpp"

#include <istream>
#include <iterator>

#include "jrank/error.hpp"

namespace jrank::csv {

std::vector<Row> read(std::istream& in) {
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::vector<Row> rows;
  Row row;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t line = 1;
  row.line = 1;

  auto end_field = [&] {
    row.fields.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    const bool blank = row.fields.size() == 1 && row.fields[0].empty();
    if (!blank) rows.push_back(std::move(row));
    row = Row{};
    row.line = line;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (in_quotes) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (ch == '\n') ++line;
        field += ch;
      }
      continue;
    }
    switch (ch) {
      case '"':
        if (field_started) {
          fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": stray quote");
        }
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        ++line;
        end_row();
        break;
      default:
        field += ch;
        field_started = true;
    }
  }
  if (in_quotes) fail(ErrorCode::ParseError, "line " + std::to_string(row.line) + ": unterminated quote");
  if (field_started || !row.fields.empty()) end_row();
  return rows;
}

std::vector<Row> read_with_header(std::istream& in, const std::vector<std::string>& header) {
  auto rows = read(in);
  auto join = [](const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) out += (i ? "," : "") + fields[i];
    return out;
  };
  if (rows.empty()) fail(ErrorCode::ParseError, "missing header '" + join(header) + "'");
  auto& first = rows.front().fields;
  // Tolerate a UTF-8 byte order mark.
  if (!first.empty() && first[0].starts_with("\xEF\xBB\xBF")) first[0].erase(0, 3);
  if (first != header) {
    fail(ErrorCode::ParseError, "expected header '" + join(header) + "', got '" + join(first) + "'");
  }
  rows.erase(rows.begin());
  for (const auto& row : rows) {
    if (row.fields.size() != header.size()) {
      fail(ErrorCode::ParseError, "line " + std::to_string(row.line) + ": expected " +
                                      std::to_string(header.size()) + " fields, got " +
                                      std::to_string(row.fields.size()));
    }
  }
  return rows;
}

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (const char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

}  // namespace jrank::csv
