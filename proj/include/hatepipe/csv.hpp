#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hatepipe/dataset.hpp"

namespace hatepipe {

struct CsvRecord {
  std::vector<std::string> fields;
  std::size_t line = 0;  // line on which the record starts
};

// RFC-4180 style record reader: comma delimiter, double-quote quoting with
// doubled-quote escapes, quoted fields may span lines. Accepts LF and CRLF.
// Blank lines are skipped.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  // Next record, or nullopt at end of input. Throws ParseError on an
  // unterminated quote.
  std::optional<CsvRecord> next();

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

// Builds a Dataset from CSV. A column is numeric when every non-empty cell
// parses as a decimal number, text otherwise. The class column, when given,
// becomes nominal with values in first-appearance order. Empty cells are
// missing values. Without a header, columns are named col1, col2, ...
// With infer_kinds off every non-class column is text.
Dataset parse_csv(std::istream& in, const std::optional<ColumnRef>& class_column,
                  bool header = true, bool infer_kinds = true);
Dataset parse_csv(std::string_view text, const std::optional<ColumnRef>& class_column,
                  bool header = true, bool infer_kinds = true);

std::optional<double> parse_decimal(std::string_view cell);

std::string csv_escape(std::string_view field);
void write_csv_record(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace hatepipe
