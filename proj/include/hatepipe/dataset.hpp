#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hatepipe {

enum class AttributeKind { kNumeric, kNominal, kText };

std::string_view to_string(AttributeKind kind);

struct AttributeSpec {
  std::string name;
  AttributeKind kind = AttributeKind::kNumeric;
  // Only meaningful for nominal attributes: ordered, duplicate-free.
  std::vector<std::string> values;

  static AttributeSpec numeric(std::string name);
  static AttributeSpec text(std::string name);
  static AttributeSpec nominal(std::string name, std::vector<std::string> values);

  bool is_numeric() const { return kind == AttributeKind::kNumeric; }
  bool is_nominal() const { return kind == AttributeKind::kNominal; }
  bool is_text() const { return kind == AttributeKind::kText; }

  // Index of a nominal value, or nullopt when undeclared.
  std::optional<std::size_t> value_index(std::string_view value) const;

  bool operator==(const AttributeSpec&) const = default;
};

struct Missing {
  auto operator<=>(const Missing&) const = default;
};

struct NominalIndex {
  std::size_t index = 0;
  auto operator<=>(const NominalIndex&) const = default;
};

// One cell: missing, numeric, nominal value index or text.
using Value = std::variant<Missing, double, NominalIndex, std::string>;
using Row = std::vector<Value>;

inline bool is_missing(const Value& v) { return std::holds_alternative<Missing>(v); }

// Index into the class attribute's value list.
struct ClassLabel {
  std::size_t index = 0;
  auto operator<=>(const ClassLabel&) const = default;
};

// Row-wise table with a typed schema. At most one attribute is the class
// attribute and it is always nominal.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::string relation, std::vector<AttributeSpec> schema,
          std::optional<std::size_t> class_index = std::nullopt);

  const std::string& relation() const { return relation_; }
  void set_relation(std::string relation) { relation_ = std::move(relation); }

  const std::vector<AttributeSpec>& schema() const { return schema_; }
  const AttributeSpec& attribute(std::size_t i) const { return schema_.at(i); }
  std::size_t num_attributes() const { return schema_.size(); }
  std::optional<std::size_t> find_attribute(std::string_view name) const;

  const std::vector<Row>& rows() const { return rows_; }
  const Row& row(std::size_t i) const { return rows_.at(i); }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  // Appends after checking arity and nominal ranges; throws ValidationError.
  void add_row(Row row);
  void reserve(std::size_t n) { rows_.reserve(n); }

  std::optional<std::size_t> class_index() const { return class_index_; }
  bool has_class() const { return class_index_.has_value(); }
  const AttributeSpec& class_attribute() const;
  std::size_t num_classes() const { return class_attribute().values.size(); }

  // Designates the class attribute. A text attribute is coerced to nominal
  // with values in first-appearance order; numeric attributes are rejected.
  void set_class_index(std::size_t index);
  void clear_class() { class_index_.reset(); }

  // Class of row i; throws ValidationError when the class value is missing.
  ClassLabel label(std::size_t i) const;
  std::vector<ClassLabel> labels() const;
  // Instance count per class value.
  std::vector<std::size_t> class_counts() const;

  // Same schema and class index, no rows.
  Dataset empty_copy() const;
  // Rows at the given indices, in the order given.
  Dataset subset(const std::vector<std::size_t>& indices) const;

  bool operator==(const Dataset&) const = default;

 private:
  void validate_row(const Row& row) const;

  std::string relation_;
  std::vector<AttributeSpec> schema_;
  std::vector<Row> rows_;
  std::optional<std::size_t> class_index_;
};

// Reference to a column by name or by 0-based position.
using ColumnRef = std::variant<std::string, std::size_t>;

// Resolves a ColumnRef. A string that names no column but parses as an
// unsigned integer is treated as a position.
std::optional<std::size_t> resolve_column(const Dataset& ds, const ColumnRef& ref);

}  // namespace hatepipe
