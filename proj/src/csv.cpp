#include "hatepipe/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "hatepipe/error.hpp"

namespace hatepipe {

std::optional<CsvRecord> CsvReader::next() {
  std::string raw;
  // Whether the current physical line ended in CRLF; embedded line breaks
  // inside quotes are kept verbatim.
  bool crlf = false;
  auto strip_cr = [&] {
    crlf = !raw.empty() && raw.back() == '\r';
    if (crlf) raw.pop_back();
  };
  while (std::getline(in_, raw)) {
    ++line_;
    strip_cr();
    if (line_ == 1 && raw.starts_with("\xEF\xBB\xBF")) raw.erase(0, 3);
    if (raw.empty()) continue;

    CsvRecord record;
    record.line = line_;
    std::string field;
    bool in_quotes = false;
    std::size_t pos = 0;
    while (true) {
      if (pos >= raw.size()) {
        if (!in_quotes) break;
        // Quoted field continues on the next physical line.
        if (!std::getline(in_, raw)) {
          throw ParseError("unterminated quote in record starting", record.line);
        }
        ++line_;
        field += crlf ? "\r\n" : "\n";
        strip_cr();
        pos = 0;
        continue;
      }
      const char c = raw[pos++];
      if (in_quotes) {
        if (c == '"') {
          if (pos < raw.size() && raw[pos] == '"') {
            field.push_back('"');
            ++pos;
          } else {
            in_quotes = false;
          }
        } else {
          field.push_back(c);
        }
      } else if (c == '"') {
        in_quotes = true;
      } else if (c == ',') {
        record.fields.push_back(std::move(field));
        field.clear();
      } else {
        field.push_back(c);
      }
    }
    record.fields.push_back(std::move(field));
    return record;
  }
  if (in_.bad()) throw ParseError("read failure", line_);
  return std::nullopt;
}

std::optional<double> parse_decimal(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

Dataset parse_csv(std::istream& in, const std::optional<ColumnRef>& class_column, bool header,
                  bool infer_kinds) {
  CsvReader reader(in);
  std::vector<std::string> names;
  std::vector<CsvRecord> records;
  if (header) {
    auto first = reader.next();
    if (!first) throw ParseError("missing header row", 0);
    names = std::move(first->fields);
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i].empty()) names[i] = "col" + std::to_string(i + 1);
      if (std::find(names.begin(), names.begin() + i, names[i]) != names.begin() + i) {
        throw ParseError("duplicate column name '" + names[i] + "'", first->line);
      }
    }
  }
  while (auto rec = reader.next()) {
    if (names.empty()) {
      for (std::size_t i = 0; i < rec->fields.size(); ++i) {
        names.push_back("col" + std::to_string(i + 1));
      }
    }
    if (rec->fields.size() != names.size()) {
      throw ParseError("ragged row: " + std::to_string(rec->fields.size()) +
                           " fields, expected " + std::to_string(names.size()),
                       rec->line);
    }
    records.push_back(std::move(*rec));
  }

  std::optional<std::size_t> class_index;
  if (class_column) {
    if (const auto* pos = std::get_if<std::size_t>(&*class_column)) {
      if (*pos < names.size()) class_index = *pos;
    } else {
      const auto& want = std::get<std::string>(*class_column);
      const auto it = std::find(names.begin(), names.end(), want);
      if (it != names.end()) {
        class_index = static_cast<std::size_t>(it - names.begin());
      } else {
        std::size_t pos = 0;
        auto [ptr, ec] = std::from_chars(want.data(), want.data() + want.size(), pos);
        if (!want.empty() && ec == std::errc{} && ptr == want.data() + want.size() &&
            pos < names.size()) {
          class_index = pos;
        }
      }
    }
    if (!class_index) {
      std::string desc = std::holds_alternative<std::string>(*class_column)
                             ? std::get<std::string>(*class_column)
                             : std::to_string(std::get<std::size_t>(*class_column));
      throw ValidationError("class column '" + desc + "' not found");
    }
  }

  std::vector<AttributeSpec> schema;
  for (std::size_t col = 0; col < names.size(); ++col) {
    bool numeric = infer_kinds && col != class_index;
    for (const auto& rec : records) {
      if (!numeric) break;
      const auto& cell = rec.fields[col];
      if (!cell.empty() && !parse_decimal(cell)) numeric = false;
    }
    schema.push_back(numeric ? AttributeSpec::numeric(names[col])
                             : AttributeSpec::text(names[col]));
  }

  Dataset ds("csv", schema);
  ds.reserve(records.size());
  for (const auto& rec : records) {
    Row row;
    row.reserve(names.size());
    for (std::size_t col = 0; col < names.size(); ++col) {
      const auto& cell = rec.fields[col];
      if (cell.empty()) {
        if (col == class_index) throw ParseError("missing class value", rec.line);
        row.emplace_back(Missing{});
      } else if (schema[col].is_numeric()) {
        row.emplace_back(*parse_decimal(cell));
      } else {
        row.emplace_back(cell);
      }
    }
    ds.add_row(std::move(row));
  }
  if (class_index) ds.set_class_index(*class_index);
  return ds;
}

Dataset parse_csv(std::string_view text, const std::optional<ColumnRef>& class_column,
                  bool header, bool infer_kinds) {
  std::istringstream in{std::string(text)};
  return parse_csv(in, class_column, header, infer_kinds);
}

std::string csv_escape(std::string_view field) {
  const bool quote = field.find_first_of(",\"\r\n") != std::string_view::npos ||
                     (!field.empty() && (field.front() == ' ' || field.back() == ' '));
  if (!quote) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_csv_record(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << csv_escape(fields[i]);
  }
  out << '\n';
}

}  // namespace hatepipe
