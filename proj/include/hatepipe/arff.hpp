#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "hatepipe/dataset.hpp"

namespace hatepipe {

// Reads the dense ARFF subset: @relation, @attribute (numeric, integer, real,
// string or a {nominal,list}) and @data with comma-separated rows. Keywords
// are case-insensitive, nominal values case-sensitive, "?" marks a missing
// value. The last attribute becomes the class attribute when it is nominal.
// Sparse rows, date and relational attributes are rejected.
// Throws ParseError carrying the offending line number.
Dataset parse_arff(std::istream& in);
Dataset parse_arff(std::string_view text);

// Emits LF-terminated ARFF that parse_arff reads back to an equal Dataset.
void write_arff(std::ostream& out, const Dataset& ds);
std::string write_arff(const Dataset& ds);

// Numbers are written in shortest round-trip form.
std::string format_number(double value);

}  // namespace hatepipe
