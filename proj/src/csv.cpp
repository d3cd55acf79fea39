#include "mnpp/csv.hpp"

#include "mnpp/errors.hpp"

namespace mnpp {

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string csv_line(const CsvRow& row) {
  std::string out;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(row[i]);
  }
  out += "\r\n";
  return out;
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw InputError("CSV has no column '" + std::string(name) + "'");
}

CsvTable parse_csv(std::string_view text) {
  CsvTable table;
  std::size_t pos = 0;
  const auto at_line_end = [&](std::size_t i) {
    return i >= text.size() || text[i] == '\n' || text[i] == '\r';
  };
  const auto skip_eol = [&](std::size_t& i) {
    if (i < text.size() && text[i] == '\r') ++i;
    if (i < text.size() && text[i] == '\n') ++i;
  };

  while (pos < text.size() && text[pos] == '#') {
    std::size_t end = pos;
    while (!at_line_end(end)) ++end;
    table.comments.emplace_back(text.substr(pos + 1, end - pos - 1));
    pos = end;
    skip_eol(pos);
  }

  bool have_header = false;
  std::size_t line = 1 + table.comments.size();
  while (pos < text.size()) {
    CsvRow row;
    std::string field;
    bool quoted = false;
    bool was_quoted = false;
    while (true) {
      if (pos >= text.size()) {
        if (quoted) throw InputError("CSV line " + std::to_string(line) + ": unterminated quote");
        row.push_back(std::move(field));
        break;
      }
      const char ch = text[pos];
      if (quoted) {
        if (ch == '"') {
          if (pos + 1 < text.size() && text[pos + 1] == '"') {
            field += '"';
            pos += 2;
          } else {
            quoted = false;
            ++pos;
          }
        } else {
          if (ch == '\n') ++line;
          field += ch;
          ++pos;
        }
        continue;
      }
      if (ch == '"' && field.empty() && !was_quoted) {
        quoted = was_quoted = true;
        ++pos;
      } else if (ch == ',') {
        row.push_back(std::move(field));
        field.clear();
        was_quoted = false;
        ++pos;
      } else if (ch == '\r' || ch == '\n') {
        row.push_back(std::move(field));
        skip_eol(pos);
        break;
      } else {
        if (was_quoted) {
          throw InputError("CSV line " + std::to_string(line) + ": text after closing quote");
        }
        field += ch;
        ++pos;
      }
    }
    ++line;
    if (!have_header) {
      table.header = std::move(row);
      have_header = true;
    } else {
      if (row.size() != table.header.size()) {
        throw InputError("CSV line " + std::to_string(line - 1) + ": expected " +
                         std::to_string(table.header.size()) + " fields, got " +
                         std::to_string(row.size()));
      }
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

}  // namespace mnpp
