#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jrank::csv {

/// One parsed record with its 1-based source line (for diagnostics).
struct Row {
  std::vector<std::string> fields;
  std::size_t line = 0;
};

/// RFC 4180 reader: quoted fields, doubled quotes, embedded newlines.
/// Blank lines are skipped. Throws ParseError on an unterminated quote.
std::vector<Row> read(std::istream& in);

/// Reads and checks that the first row equals `header` (ParseError otherwise);
/// returns the remaining rows, each checked to have header.size() fields.
std::vector<Row> read_with_header(std::istream& in, const std::vector<std::string>& header);

std::string quote(const std::string& field);

}  // namespace jrank::csv
