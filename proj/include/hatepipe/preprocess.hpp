#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hatepipe/dataset.hpp"

namespace hatepipe {

// Drops later copies of fully identical rows; first occurrences keep their order.
Dataset deduplicate(const Dataset& ds);

// Lowercases, replaces scheme://... tokens with URL and @handles with USER,
// strips control characters and collapses whitespace. Idempotent.
std::string clean_text(std::string_view raw);

// clean_text over every text attribute except the class.
Dataset clean_text_attributes(const Dataset& ds);

struct TargetRange {
  double lo = 0.0;
  double hi = 1.0;

  static TargetRange unit() { return {0.0, 1.0}; }
  static TargetRange symmetric() { return {-1.0, 1.0}; }

  bool operator==(const TargetRange&) const = default;
};

struct AttributeScaling {
  std::size_t attribute = 0;
  std::string name;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;  // replacement for missing values

  bool operator==(const AttributeScaling&) const = default;
};

// Min-max scaling fitted on a training split, one entry per numeric
// non-class attribute.
struct NormalizationParams {
  TargetRange range;
  std::size_t num_attributes = 0;
  std::vector<AttributeScaling> attributes;

  bool operator==(const NormalizationParams&) const = default;
};

NormalizationParams fit_normalizer(const Dataset& train, TargetRange range = TargetRange::unit());

// Maps v to lo + (v - min)(hi - lo)/(max - min), clipping to the target range.
// Missing values become the fitted mean first; constant attributes map to lo.
// Throws ValidationError when the schema does not match the fitted one.
Dataset apply_normalizer(const Dataset& ds, const NormalizationParams& params);

// Mean imputation only, no scaling.
Dataset impute_missing(const Dataset& ds, const NormalizationParams& params);

// One-hot encodes every non-class nominal attribute into numeric indicators
// named "attr=value". A two-valued attribute becomes a single indicator for
// its first declared value.
Dataset nominal_to_numeric(const Dataset& ds);

struct RankedAttribute {
  std::size_t attribute = 0;
  double score = 0.0;  // information gain, bits

  bool operator==(const RankedAttribute&) const = default;
};

// Descending by score, ties by ascending attribute index.
using AttributeRanking = std::vector<RankedAttribute>;

// Shannon entropy in bits of a count histogram.
double entropy_bits(std::span<const std::size_t> counts);

// Information gain H(Y) - H(Y|A) of every non-class attribute. Numeric
// attributes are cut into 10 equal-width bins over their observed range, text
// attributes are treated as categorical on their exact string, and missing
// values form a bin of their own.
AttributeRanking rank_attributes(const Dataset& ds);

// Keeps the class plus the top-k ranked attributes in original order.
Dataset select_attributes(const Dataset& ds, std::size_t k);

// Keeps the class plus the listed attributes in original order.
Dataset keep_attributes(const Dataset& ds, std::span<const std::size_t> attributes);

}  // namespace hatepipe
