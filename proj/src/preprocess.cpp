#include "hatepipe/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "hatepipe/error.hpp"

namespace hatepipe {
namespace {

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\v' || c == '\f' || c == '\r';
}

bool is_ascii_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

bool is_ascii_alnum(char c) { return is_ascii_alpha(c) || (c >= '0' && c <= '9'); }

bool looks_like_url(std::string_view token) {
  const auto sep = token.find("://");
  return sep != std::string_view::npos && sep > 0 && is_ascii_alpha(token[sep - 1]);
}

bool looks_like_mention(std::string_view token) {
  return token.size() > 1 && token[0] == '@' && (is_ascii_alnum(token[1]) || token[1] == '_');
}

constexpr std::size_t kNumericBins = 10;

}  // namespace

Dataset deduplicate(const Dataset& ds) {
  auto less = [](const Row* a, const Row* b) { return *a < *b; };
  std::set<const Row*, decltype(less)> seen(less);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (seen.insert(&ds.row(i)).second) keep.push_back(i);
  }
  return ds.subset(keep);
}

std::string clean_text(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    if (!out.empty()) out.push_back(' ');
    if (looks_like_url(token)) {
      out += "URL";
    } else if (looks_like_mention(token)) {
      out += "USER";
    } else if (token == "URL" || token == "USER") {
      out += token;
    } else {
      for (char c : token) {
        out.push_back((c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c);
      }
    }
    token.clear();
  };
  for (char c : raw) {
    if (is_ascii_space(c)) {
      flush();
    } else if (static_cast<unsigned char>(c) < 0x20 || c == 0x7f) {
      continue;
    } else {
      token.push_back(c);
    }
  }
  flush();
  return out;
}

Dataset clean_text_attributes(const Dataset& ds) {
  Dataset out = ds.empty_copy();
  out.reserve(ds.size());
  const auto cls = ds.class_index();
  for (const auto& row : ds.rows()) {
    Row copy = row;
    for (std::size_t i = 0; i < copy.size(); ++i) {
      if (i == cls || !ds.attribute(i).is_text()) continue;
      if (auto* s = std::get_if<std::string>(&copy[i])) *s = clean_text(*s);
    }
    out.add_row(std::move(copy));
  }
  return out;
}

NormalizationParams fit_normalizer(const Dataset& train, TargetRange range) {
  if (!(range.lo < range.hi)) throw ValidationError("normalization range must have lo < hi");
  NormalizationParams params;
  params.range = range;
  params.num_attributes = train.num_attributes();
  for (std::size_t a = 0; a < train.num_attributes(); ++a) {
    const auto& attr = train.attribute(a);
    if (!attr.is_numeric() || a == train.class_index()) continue;
    AttributeScaling s{a, attr.name, 0.0, 0.0, 0.0};
    std::size_t n = 0;
    double sum = 0.0;
    for (const auto& row : train.rows()) {
      const auto* v = std::get_if<double>(&row[a]);
      if (!v) continue;
      if (n == 0) {
        s.min = s.max = *v;
      } else {
        s.min = std::min(s.min, *v);
        s.max = std::max(s.max, *v);
      }
      sum += *v;
      ++n;
    }
    s.mean = n ? std::clamp(sum / static_cast<double>(n), s.min, s.max) : 0.0;
    params.attributes.push_back(std::move(s));
  }
  return params;
}

namespace {

void check_schema(const Dataset& ds, const NormalizationParams& params) {
  if (ds.num_attributes() != params.num_attributes) {
    throw ValidationError("normalizer was fitted on " + std::to_string(params.num_attributes) +
                          " attributes, dataset has " + std::to_string(ds.num_attributes()));
  }
  for (const auto& s : params.attributes) {
    const auto& attr = ds.attribute(s.attribute);
    if (!attr.is_numeric() || attr.name != s.name) {
      throw ValidationError("attribute " + std::to_string(s.attribute) + " ('" + attr.name +
                            "') does not match fitted numeric attribute '" + s.name + "'");
    }
  }
}

template <typename Transform>
Dataset map_numeric(const Dataset& ds, const NormalizationParams& params, Transform f) {
  check_schema(ds, params);
  Dataset out = ds.empty_copy();
  out.reserve(ds.size());
  for (const auto& row : ds.rows()) {
    Row copy = row;
    for (const auto& s : params.attributes) {
      auto& cell = copy[s.attribute];
      const double v = is_missing(cell) ? s.mean : std::get<double>(cell);
      cell = f(s, v);
    }
    out.add_row(std::move(copy));
  }
  return out;
}

}  // namespace

Dataset apply_normalizer(const Dataset& ds, const NormalizationParams& params) {
  const auto [lo, hi] = params.range;
  return map_numeric(ds, params, [lo, hi](const AttributeScaling& s, double v) {
    if (!(s.max > s.min)) return lo;
    const double t = std::clamp((v - s.min) / (s.max - s.min), 0.0, 1.0);
    return std::clamp(lo + t * (hi - lo), lo, hi);
  });
}

Dataset impute_missing(const Dataset& ds, const NormalizationParams& params) {
  return map_numeric(ds, params, [](const AttributeScaling&, double v) { return v; });
}

Dataset nominal_to_numeric(const Dataset& ds) {
  const auto cls = ds.class_index();
  std::vector<AttributeSpec> schema;
  std::optional<std::size_t> new_class;
  for (std::size_t a = 0; a < ds.num_attributes(); ++a) {
    const auto& attr = ds.attribute(a);
    if (a == cls) new_class = schema.size();
    if (!attr.is_nominal() || a == cls) {
      schema.push_back(attr);
    } else if (attr.values.size() == 2) {
      schema.push_back(AttributeSpec::numeric(attr.name + "=" + attr.values[0]));
    } else {
      for (const auto& v : attr.values) schema.push_back(AttributeSpec::numeric(attr.name + "=" + v));
    }
  }
  Dataset out(ds.relation(), std::move(schema));
  if (new_class) out.set_class_index(*new_class);
  out.reserve(ds.size());
  for (const auto& row : ds.rows()) {
    Row converted;
    converted.reserve(out.num_attributes());
    for (std::size_t a = 0; a < row.size(); ++a) {
      const auto& attr = ds.attribute(a);
      if (!attr.is_nominal() || a == cls) {
        converted.push_back(row[a]);
        continue;
      }
      const auto* nom = std::get_if<NominalIndex>(&row[a]);
      if (attr.values.size() == 2) {
        converted.push_back(nom ? Value{nom->index == 0 ? 1.0 : 0.0} : Value{Missing{}});
        continue;
      }
      for (std::size_t v = 0; v < attr.values.size(); ++v) {
        converted.push_back(nom ? Value{nom->index == v ? 1.0 : 0.0} : Value{Missing{}});
      }
    }
    out.add_row(std::move(converted));
  }
  return out;
}

double entropy_bits(std::span<const std::size_t> counts) {
  std::size_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) return 0.0;
  double h = 0.0;
  for (auto c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

AttributeRanking rank_attributes(const Dataset& ds) {
  if (ds.empty()) throw ValidationError("cannot rank attributes of an empty dataset");
  const auto cls = ds.class_index();
  if (!cls) throw ValidationError("attribute ranking needs a class attribute");
  const auto labels = ds.labels();
  const auto num_classes = ds.num_classes();
  const double class_entropy = entropy_bits(ds.class_counts());
  const double n = static_cast<double>(ds.size());

  AttributeRanking ranking;
  for (std::size_t a = 0; a < ds.num_attributes(); ++a) {
    if (a == *cls) continue;
    const auto& attr = ds.attribute(a);

    // Bin id per row.
    std::vector<std::size_t> bins(ds.size());
    std::size_t num_bins = 0;
    if (attr.is_nominal()) {
      num_bins = attr.values.size() + 1;
      for (std::size_t i = 0; i < ds.size(); ++i) {
        const auto* nom = std::get_if<NominalIndex>(&ds.row(i)[a]);
        bins[i] = nom ? nom->index : attr.values.size();
      }
    } else if (attr.is_numeric()) {
      double lo = 0.0, hi = 0.0;
      bool any = false;
      for (const auto& row : ds.rows()) {
        if (const auto* v = std::get_if<double>(&row[a])) {
          lo = any ? std::min(lo, *v) : *v;
          hi = any ? std::max(hi, *v) : *v;
          any = true;
        }
      }
      num_bins = kNumericBins + 1;
      for (std::size_t i = 0; i < ds.size(); ++i) {
        const auto* v = std::get_if<double>(&ds.row(i)[a]);
        if (!v) {
          bins[i] = kNumericBins;
        } else if (!(hi > lo)) {
          bins[i] = 0;
        } else {
          const double t = (*v - lo) / (hi - lo) * static_cast<double>(kNumericBins);
          bins[i] = std::min(kNumericBins - 1, static_cast<std::size_t>(std::max(0.0, t)));
        }
      }
    } else {
      std::map<std::string, std::size_t> ids;
      for (std::size_t i = 0; i < ds.size(); ++i) {
        const auto* s = std::get_if<std::string>(&ds.row(i)[a]);
        if (!s) {
          bins[i] = 0;
          continue;
        }
        auto [it, inserted] = ids.emplace(*s, ids.size() + 1);
        bins[i] = it->second;
      }
      num_bins = ids.size() + 1;
    }

    std::vector<std::vector<std::size_t>> table(num_bins, std::vector<std::size_t>(num_classes, 0));
    for (std::size_t i = 0; i < ds.size(); ++i) ++table[bins[i]][labels[i].index];
    double conditional = 0.0;
    for (const auto& counts : table) {
      std::size_t size = 0;
      for (auto c : counts) size += c;
      if (size == 0) continue;
      conditional += static_cast<double>(size) / n * entropy_bits(counts);
    }
    const double gain = std::clamp(class_entropy - conditional, 0.0, class_entropy);
    ranking.push_back({a, gain});
  }
  std::stable_sort(ranking.begin(), ranking.end(),
                   [](const RankedAttribute& x, const RankedAttribute& y) {
                     if (x.score != y.score) return x.score > y.score;
                     return x.attribute < y.attribute;
                   });
  return ranking;
}

Dataset keep_attributes(const Dataset& ds, std::span<const std::size_t> attributes) {
  std::vector<bool> keep(ds.num_attributes(), false);
  for (auto a : attributes) {
    if (a >= ds.num_attributes()) throw ValidationError("attribute index out of range");
    keep[a] = true;
  }
  if (auto cls = ds.class_index()) keep[*cls] = true;

  std::vector<std::size_t> columns;
  std::vector<AttributeSpec> schema;
  std::optional<std::size_t> new_class;
  for (std::size_t a = 0; a < ds.num_attributes(); ++a) {
    if (!keep[a]) continue;
    if (a == ds.class_index()) new_class = schema.size();
    columns.push_back(a);
    schema.push_back(ds.attribute(a));
  }
  Dataset out(ds.relation(), std::move(schema), new_class);
  out.reserve(ds.size());
  for (const auto& row : ds.rows()) {
    Row kept;
    kept.reserve(columns.size());
    for (auto a : columns) kept.push_back(row[a]);
    out.add_row(std::move(kept));
  }
  return out;
}

Dataset select_attributes(const Dataset& ds, std::size_t k) {
  if (k == 0) throw ValidationError("attribute selection needs k >= 1");
  const auto ranking = rank_attributes(ds);
  std::vector<std::size_t> top;
  for (std::size_t i = 0; i < std::min(k, ranking.size()); ++i) top.push_back(ranking[i].attribute);
  return keep_attributes(ds, top);
}

}  // namespace hatepipe
