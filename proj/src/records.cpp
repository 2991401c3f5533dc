#include <lgfib/records.hpp>

#include <lgfib/errors.hpp>

#include <json.hpp>

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <string_view>
#include <type_traits>

namespace lgfib {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view field, double& out) {
  const std::string text(trim(field));
  if (text.empty()) return false;
  char* end = nullptr;
  errno = 0;
  out = std::strtod(text.c_str(), &end);
  return end == text.c_str() + text.size() && errno != ERANGE && std::isfinite(out);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    fields.push_back(line.substr(pos, comma == std::string_view::npos ? comma : comma - pos));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return fields;
}

nlohmann::ordered_json to_json(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else {
          return v;
        }
      },
      cell);
}

std::string to_csv(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return {};
        } else if constexpr (std::is_same_v<T, double>) {
          return format_number(v);
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else {
          return v;
        }
      },
      cell);
}

}  // namespace

std::vector<InputRecord> read_records(std::istream& in) {
  std::vector<InputRecord> records;
  std::string line;
  std::size_t number = 0;
  bool first_row = true;
  while (std::getline(in, line)) {
    ++number;
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;

    InputRecord rec;
    rec.line = number;
    bool numeric = true;
    std::size_t parsed = 0;
    for (std::string_view field : split(body)) {
      double v = 0;
      if (!parse_double(field, v)) {
        numeric = false;
        break;
      }
      rec.values.push_back(v);
      ++parsed;
    }
    const bool header = first_row && !numeric;
    first_row = false;
    if (header) continue;
    if (!numeric) {
      throw ParseError("field " + std::to_string(parsed + 1) + " is not a finite number", number);
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

TableWriter::TableWriter(std::ostream& out, std::vector<std::string> columns, Format format)
    : out_(out), columns_(std::move(columns)), format_(format) {
  if (format_ == Format::kCsv) {
    for (std::size_t i = 0; i < columns_.size(); ++i) out_ << (i ? "," : "") << columns_[i];
    out_ << '\n';
  } else {
    out_ << "{\n  \"rows\": [";
  }
}

void TableWriter::row(const std::vector<Cell>& cells) {
  if (format_ == Format::kCsv) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << to_csv(cells[i]);
    out_ << '\n';
  } else {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < cells.size() && i < columns_.size(); ++i) {
      obj[columns_[i]] = to_json(cells[i]);
    }
    out_ << (first_row_ ? "\n    " : ",\n    ") << obj.dump();
  }
  first_row_ = false;
}

void TableWriter::finish(const std::vector<std::pair<std::string, Cell>>& summary) {
  if (format_ == Format::kCsv) {
    for (const auto& [key, value] : summary) out_ << "# " << key << ',' << to_csv(value) << '\n';
    return;
  }
  out_ << (first_row_ ? "]" : "\n  ]");
  nlohmann::ordered_json obj = nlohmann::ordered_json::object();
  for (const auto& [key, value] : summary) obj[key] = to_json(value);
  out_ << ",\n  \"summary\": " << obj.dump() << "\n}\n";
}

void write_table(std::ostream& out, const Table& table, Format format) {
  TableWriter writer(out, table.columns, format);
  for (const auto& row : table.rows) writer.row(row);
  writer.finish(table.summary);
}

void write_csv(std::ostream& out, const Table& table) { write_table(out, table, Format::kCsv); }

void write_json(std::ostream& out, const Table& table) { write_table(out, table, Format::kJson); }

}  // namespace lgfib
