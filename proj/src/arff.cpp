#include "hatepipe/arff.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "hatepipe/error.hpp"

namespace hatepipe {
namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

struct Token {
  std::string text;
  bool quoted = false;

  bool is_missing() const { return !quoted && text == "?"; }
};

// Reads one quoted token starting at s[pos] (the opening quote). Advances pos
// past the closing quote.
std::string read_quoted(std::string_view s, std::size_t& pos, std::size_t line) {
  const char quote = s[pos++];
  std::string out;
  while (true) {
    if (pos >= s.size()) throw ParseError("unterminated quoted value", line);
    const char c = s[pos++];
    if (c == quote) return out;
    if (c == '\\') {
      if (pos >= s.size()) throw ParseError("unterminated quoted value", line);
      const char e = s[pos++];
      switch (e) {
        case 'n':
          out.push_back('\n');
          break;
        case 'r':
          out.push_back('\r');
          break;
        case 't':
          out.push_back('\t');
          break;
        default:
          out.push_back(e);
      }
      continue;
    }
    out.push_back(c);
  }
}

// Splits a comma-separated list honouring quotes.
std::vector<Token> split_values(std::string_view s, std::size_t line) {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  while (true) {
    while (pos < s.size() && is_space(s[pos])) ++pos;
    Token tok;
    if (pos < s.size() && (s[pos] == '\'' || s[pos] == '"')) {
      tok.text = read_quoted(s, pos, line);
      tok.quoted = true;
      while (pos < s.size() && is_space(s[pos])) ++pos;
      if (pos < s.size() && s[pos] != ',') {
        throw ParseError("unexpected text after quoted value", line);
      }
    } else {
      const auto end = std::min(s.find(',', pos), s.size());
      tok.text = std::string(trim(s.substr(pos, end - pos)));
      pos = end;
    }
    tokens.push_back(std::move(tok));
    if (pos >= s.size()) break;
    ++pos;  // comma
  }
  return tokens;
}

// Reads a name that is either quoted or runs to the next whitespace.
std::string read_name(std::string_view s, std::size_t& pos, std::size_t line) {
  while (pos < s.size() && is_space(s[pos])) ++pos;
  if (pos >= s.size()) throw ParseError("missing name", line);
  if (s[pos] == '\'' || s[pos] == '"') return read_quoted(s, pos, line);
  const auto start = pos;
  while (pos < s.size() && !is_space(s[pos]) && s[pos] != '{') ++pos;
  return std::string(s.substr(start, pos - start));
}

std::optional<double> parse_number(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

AttributeSpec parse_attribute(std::string_view rest, std::size_t line) {
  std::size_t pos = 0;
  auto name = read_name(rest, pos, line);
  if (name.empty()) throw ParseError("empty attribute name", line);
  const auto type = trim(rest.substr(std::min(pos, rest.size())));
  if (type.empty()) throw ParseError("missing type for attribute '" + name + "'", line);
  if (type.front() == '{') {
    if (type.back() != '}') throw ParseError("unterminated nominal value list", line);
    const auto body = trim(type.substr(1, type.size() - 2));
    if (body.empty()) throw ParseError("empty nominal value list", line);
    std::vector<std::string> values;
    for (auto& tok : split_values(body, line)) {
      if (!tok.quoted && tok.text.empty()) throw ParseError("empty nominal value", line);
      if (std::find(values.begin(), values.end(), tok.text) != values.end()) {
        throw ParseError("duplicate nominal value '" + tok.text + "'", line);
      }
      values.push_back(std::move(tok.text));
    }
    return AttributeSpec::nominal(std::move(name), std::move(values));
  }
  const auto kind = lower(type);
  if (kind == "numeric" || kind == "real" || kind == "integer") {
    return AttributeSpec::numeric(std::move(name));
  }
  if (kind == "string") return AttributeSpec::text(std::move(name));
  if (kind.starts_with("date") || kind.starts_with("relational")) {
    throw ParseError("unsupported attribute type '" + std::string(type) + "'", line);
  }
  throw ParseError("unknown attribute type '" + std::string(type) + "'", line);
}

Value convert(const Token& tok, const AttributeSpec& attr, std::size_t line) {
  if (tok.is_missing()) return Missing{};
  switch (attr.kind) {
    case AttributeKind::kNumeric: {
      auto v = parse_number(tok.text);
      if (!v) throw ParseError("invalid numeric value '" + tok.text + "'", line);
      return *v;
    }
    case AttributeKind::kNominal: {
      auto idx = attr.value_index(tok.text);
      if (!idx) throw ParseError("undeclared nominal value '" + tok.text + "'", line);
      return NominalIndex{*idx};
    }
    case AttributeKind::kText:
      return tok.text;
  }
  return Missing{};
}

bool needs_quotes(std::string_view s) {
  // A leading @ would read as a keyword at the start of a data line.
  if (s.empty() || s == "?" || s.front() == '@') return true;
  for (unsigned char c : s) {
    if (c < 0x20 || c == 0x7f) return true;
    switch (c) {
      case ' ':
      case ',':
      case '\'':
      case '"':
      case '%':
      case '{':
      case '}':
      case '\\':
        return true;
      default:
        break;
    }
  }
  return false;
}

std::string quote(std::string_view s) {
  if (!needs_quotes(s)) return std::string(s);
  std::string out = "'";
  for (char c : s) {
    switch (c) {
      case '\'':
        out += "\\'";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        out.push_back(c);
    }
  }
  out.push_back('\'');
  return out;
}

}  // namespace

Dataset parse_arff(std::istream& in) {
  std::string relation;
  bool have_relation = false;
  std::vector<AttributeSpec> schema;
  std::optional<Dataset> ds;
  std::string raw;
  std::size_t line = 0;

  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = raw;
    if (line == 1 && text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
    text = trim(text);
    if (text.empty() || text.front() == '%') continue;

    if (!ds) {
      if (text.front() != '@') throw ParseError("expected a header keyword", line);
      const auto end = std::min(text.find_first_of(" \t"), text.size());
      const auto keyword = lower(text.substr(0, end));
      const auto rest = text.substr(end);
      if (keyword == "@relation") {
        if (have_relation) throw ParseError("duplicate @relation", line);
        if (!schema.empty()) throw ParseError("@relation after @attribute", line);
        std::size_t pos = 0;
        relation = read_name(rest, pos, line);
        if (!trim(rest.substr(std::min(pos, rest.size()))).empty()) {
          throw ParseError("unexpected text after relation name", line);
        }
        have_relation = true;
      } else if (keyword == "@attribute") {
        auto attr = parse_attribute(rest, line);
        for (const auto& existing : schema) {
          if (existing.name == attr.name) {
            throw ParseError("duplicate attribute name '" + attr.name + "'", line);
          }
        }
        schema.push_back(std::move(attr));
      } else if (keyword == "@data") {
        if (!trim(rest).empty()) throw ParseError("unexpected text after @data", line);
        std::optional<std::size_t> class_index;
        if (!schema.empty() && schema.back().is_nominal()) class_index = schema.size() - 1;
        ds.emplace(relation, schema, class_index);
      } else if (keyword == "@end") {
        throw ParseError("relational attributes are not supported", line);
      } else {
        throw ParseError("unknown keyword '" + std::string(text.substr(0, end)) + "'", line);
      }
      continue;
    }

    if (text.front() == '{') throw ParseError("sparse data rows are not supported", line);
    if (text.front() == '@') {
      throw ParseError("unexpected keyword in @data section", line);
    }
    auto tokens = split_values(text, line);
    if (tokens.size() != schema.size()) {
      throw ParseError("expected " + std::to_string(schema.size()) + " values, found " +
                           std::to_string(tokens.size()),
                       line);
    }
    Row row;
    row.reserve(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      row.push_back(convert(tokens[i], schema[i], line));
    }
    ds->add_row(std::move(row));
  }
  if (in.bad()) throw ParseError("read failure", line);
  if (!ds) throw ParseError("missing @data section", line);
  return std::move(*ds);
}

Dataset parse_arff(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_arff(in);
}

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

void write_arff(std::ostream& out, const Dataset& ds) {
  out << "@relation " << quote(ds.relation()) << "\n\n";
  for (const auto& attr : ds.schema()) {
    out << "@attribute " << quote(attr.name) << ' ';
    switch (attr.kind) {
      case AttributeKind::kNumeric:
        out << "numeric";
        break;
      case AttributeKind::kText:
        out << "string";
        break;
      case AttributeKind::kNominal: {
        out << '{';
        for (std::size_t i = 0; i < attr.values.size(); ++i) {
          if (i) out << ',';
          out << quote(attr.values[i]);
        }
        out << '}';
        break;
      }
    }
    out << '\n';
  }
  out << "\n@data\n";
  for (const auto& row : ds.rows()) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      const auto& cell = row[i];
      if (is_missing(cell)) {
        out << '?';
      } else if (const auto* num = std::get_if<double>(&cell)) {
        out << format_number(*num);
      } else if (const auto* nom = std::get_if<NominalIndex>(&cell)) {
        out << quote(ds.attribute(i).values[nom->index]);
      } else {
        out << quote(std::get<std::string>(cell));
      }
    }
    out << '\n';
  }
}

std::string write_arff(const Dataset& ds) {
  std::ostringstream out;
  write_arff(out, ds);
  return out.str();
}

}  // namespace hatepipe
