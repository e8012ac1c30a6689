#include "hatepipe/dataset.hpp"

#include <algorithm>
#include <charconv>

#include "hatepipe/error.hpp"

namespace hatepipe {

std::string_view to_string(AttributeKind kind) {
  switch (kind) {
    case AttributeKind::kNumeric:
      return "numeric";
    case AttributeKind::kNominal:
      return "nominal";
    case AttributeKind::kText:
      return "text";
  }
  return "unknown";
}

AttributeSpec AttributeSpec::numeric(std::string name) {
  return {std::move(name), AttributeKind::kNumeric, {}};
}

AttributeSpec AttributeSpec::text(std::string name) {
  return {std::move(name), AttributeKind::kText, {}};
}

AttributeSpec AttributeSpec::nominal(std::string name, std::vector<std::string> values) {
  return {std::move(name), AttributeKind::kNominal, std::move(values)};
}

std::optional<std::size_t> AttributeSpec::value_index(std::string_view value) const {
  const auto it = std::find(values.begin(), values.end(), value);
  if (it == values.end()) return std::nullopt;
  return static_cast<std::size_t>(it - values.begin());
}

Dataset::Dataset(std::string relation, std::vector<AttributeSpec> schema,
                 std::optional<std::size_t> class_index)
    : relation_(std::move(relation)), schema_(std::move(schema)) {
  for (const auto& attr : schema_) {
    if (attr.name.empty()) throw ValidationError("attribute name must not be empty");
    if (attr.is_nominal()) {
      if (attr.values.empty()) {
        throw ValidationError("nominal attribute '" + attr.name + "' has no values");
      }
      for (std::size_t i = 0; i < attr.values.size(); ++i) {
        if (std::find(attr.values.begin(), attr.values.begin() + i, attr.values[i]) !=
            attr.values.begin() + i) {
          throw ValidationError("nominal attribute '" + attr.name +
                                "' declares value '" + attr.values[i] + "' twice");
        }
      }
    }
  }
  if (class_index) set_class_index(*class_index);
}

std::optional<std::size_t> Dataset::find_attribute(std::string_view name) const {
  for (std::size_t i = 0; i < schema_.size(); ++i) {
    if (schema_[i].name == name) return i;
  }
  return std::nullopt;
}

void Dataset::validate_row(const Row& row) const {
  if (row.size() != schema_.size()) {
    throw ValidationError("row has " + std::to_string(row.size()) + " values, schema has " +
                          std::to_string(schema_.size()));
  }
  for (std::size_t i = 0; i < row.size(); ++i) {
    const auto& attr = schema_[i];
    const auto& v = row[i];
    if (is_missing(v)) continue;
    bool ok = false;
    switch (attr.kind) {
      case AttributeKind::kNumeric:
        ok = std::holds_alternative<double>(v);
        break;
      case AttributeKind::kText:
        ok = std::holds_alternative<std::string>(v);
        break;
      case AttributeKind::kNominal:
        ok = std::holds_alternative<NominalIndex>(v) &&
             std::get<NominalIndex>(v).index < attr.values.size();
        break;
    }
    if (!ok) {
      throw ValidationError("value for attribute '" + attr.name + "' does not match its " +
                            std::string(to_string(attr.kind)) + " kind");
    }
  }
}

void Dataset::add_row(Row row) {
  validate_row(row);
  rows_.push_back(std::move(row));
}

const AttributeSpec& Dataset::class_attribute() const {
  if (!class_index_) throw ValidationError("dataset has no class attribute");
  return schema_[*class_index_];
}

void Dataset::set_class_index(std::size_t index) {
  if (index >= schema_.size()) {
    throw ValidationError("class attribute index " + std::to_string(index) + " out of range");
  }
  auto& attr = schema_[index];
  if (attr.is_numeric()) {
    throw ValidationError("class attribute '" + attr.name + "' is numeric, expected nominal");
  }
  if (attr.is_text()) {
    std::vector<std::string> values;
    for (auto& row : rows_) {
      auto& cell = row[index];
      if (is_missing(cell)) continue;
      auto text = std::get<std::string>(cell);
      auto it = std::find(values.begin(), values.end(), text);
      const auto pos = static_cast<std::size_t>(it - values.begin());
      if (it == values.end()) values.push_back(text);
      cell = NominalIndex{pos};
    }
    // A nominal attribute needs at least one value.
    if (values.empty()) {
      throw ValidationError("class attribute '" + attr.name + "' has no values");
    }
    attr.kind = AttributeKind::kNominal;
    attr.values = std::move(values);
  }
  class_index_ = index;
}

ClassLabel Dataset::label(std::size_t i) const {
  const auto c = class_index_.value_or(schema_.size());
  if (c >= schema_.size()) throw ValidationError("dataset has no class attribute");
  const auto& cell = rows_.at(i)[c];
  if (is_missing(cell)) {
    throw ValidationError("instance " + std::to_string(i + 1) + " has a missing class value");
  }
  return ClassLabel{std::get<NominalIndex>(cell).index};
}

std::vector<ClassLabel> Dataset::labels() const {
  std::vector<ClassLabel> out;
  out.reserve(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) out.push_back(label(i));
  return out;
}

std::vector<std::size_t> Dataset::class_counts() const {
  std::vector<std::size_t> counts(num_classes(), 0);
  for (std::size_t i = 0; i < rows_.size(); ++i) ++counts[label(i).index];
  return counts;
}

Dataset Dataset::empty_copy() const {
  Dataset out;
  out.relation_ = relation_;
  out.schema_ = schema_;
  out.class_index_ = class_index_;
  return out;
}

Dataset Dataset::subset(const std::vector<std::size_t>& indices) const {
  Dataset out = empty_copy();
  out.rows_.reserve(indices.size());
  for (auto i : indices) out.rows_.push_back(rows_.at(i));
  return out;
}

std::optional<std::size_t> resolve_column(const Dataset& ds, const ColumnRef& ref) {
  if (const auto* pos = std::get_if<std::size_t>(&ref)) {
    if (*pos < ds.num_attributes()) return *pos;
    return std::nullopt;
  }
  const auto& name = std::get<std::string>(ref);
  if (auto found = ds.find_attribute(name)) return found;
  std::size_t pos = 0;
  const auto* first = name.data();
  const auto* last = first + name.size();
  auto [ptr, ec] = std::from_chars(first, last, pos);
  if (ec == std::errc{} && ptr == last && !name.empty() && pos < ds.num_attributes()) {
    return pos;
  }
  return std::nullopt;
}

}  // namespace hatepipe
