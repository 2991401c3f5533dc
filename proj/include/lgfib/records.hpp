#pragma once

// Numeric CSV input and tabular CSV / JSON output for the command-line tool.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace lgfib {

/// One parsed input line.
struct InputRecord {
  std::size_t line = 0;
  std::vector<double> values;
};

/// Reads comma-separated numbers. Blank lines and lines starting with '#' are
/// skipped; a first row that is not numeric is taken as a header. Any other
/// malformed field raises ParseError with its 1-based line number.
std::vector<InputRecord> read_records(std::istream& in);

/// %.17g, enough digits to round-trip any double.
std::string format_number(double value);

using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  /// Key / value lines written after the rows (CSV: "# key,value").
  std::vector<std::pair<std::string, Cell>> summary;
};

enum class Format { kCsv, kJson };

/// Header row, then one line per row; empty cells are left blank.
void write_csv(std::ostream& out, const Table& table);

/// {"rows": [{column: value, ...}, ...], "summary": {key: value, ...}}, one row
/// object per line, empty cells as null.
void write_json(std::ostream& out, const Table& table);

void write_table(std::ostream& out, const Table& table, Format format);

/// Row-at-a-time writer producing the same output as write_table, for tables
/// too large to hold in memory.
class TableWriter {
 public:
  TableWriter(std::ostream& out, std::vector<std::string> columns, Format format);
  void row(const std::vector<Cell>& cells);
  void finish(const std::vector<std::pair<std::string, Cell>>& summary);

 private:
  std::ostream& out_;
  std::vector<std::string> columns_;
  Format format_;
  bool first_row_ = true;
};

}  // namespace lgfib
