#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace mnpp {

using CsvRow = std::vector<std::string>;

/// RFC 4180 field: quoted when it holds a comma, quote, CR or LF.
std::string csv_escape(std::string_view field);
std::string csv_line(const CsvRow& row);

struct CsvTable {
  std::vector<std::string> comments;  ///< leading '#' lines, without the '#'
  CsvRow header;
  std::vector<CsvRow> rows;

  /// Column index by name; throws InputError if absent.
  std::size_t column(std::string_view name) const;
};

/// Parses RFC 4180 text with CRLF or LF line ends. Leading lines starting
/// with '#' are collected as comments; the next record is the header.
CsvTable parse_csv(std::string_view text);

}  // namespace mnpp
