#include "hatepipe/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iterator>
#include <sstream>

#include "hatepipe/arff.hpp"
#include "hatepipe/csv.hpp"
#include "hatepipe/error.hpp"
#include "hatepipe/evaluation.hpp"

namespace hatepipe {

using nlohmann::json;

std::string_view to_string(InputFormat f) { return f == InputFormat::kCsv ? "csv" : "arff"; }

std::string_view to_string(ModelKind k) {
  switch (k) {
    case ModelKind::kNbMultinomial:
      return "nb";
    case ModelKind::kNbGaussian:
      return "nb-gaussian";
    case ModelKind::kSvm:
      return "svm";
  }
  return "svm";
}

InputFormat parse_input_format(std::string_view name) {
  if (name == "csv") return InputFormat::kCsv;
  if (name == "arff") return InputFormat::kArff;
  throw ValidationError("unknown input format '" + std::string(name) + "'");
}

ModelKind parse_model_kind(std::string_view name) {
  if (name == "nb" || name == "nb-multinomial") return ModelKind::kNbMultinomial;
  if (name == "nb-gaussian") return ModelKind::kNbGaussian;
  if (name == "svm") return ModelKind::kSvm;
  throw ValidationError("unknown algorithm '" + std::string(name) + "'");
}

std::optional<TargetRange> parse_normalize(std::string_view spec) {
  if (spec == "none") return std::nullopt;
  if (spec == "0,1") return TargetRange::unit();
  if (spec == "-1,1") return TargetRange::symmetric();
  throw ValidationError("normalization range must be 0,1 or -1,1 or none, got '" +
                        std::string(spec) + "'");
}

namespace {

std::size_t parse_count(std::string_view s, std::string_view what) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ValidationError("invalid " + std::string(what) + " '" + std::string(s) + "'");
  }
  return value;
}

std::string normalize_spec(const std::optional<TargetRange>& r) {
  if (!r) return "none";
  return *r == TargetRange::symmetric() ? "-1,1" : "0,1";
}

}  // namespace

std::pair<std::size_t, std::size_t> parse_ngram_range(std::string_view spec) {
  const auto dots = spec.find("..");
  if (dots == std::string_view::npos) {
    const auto n = parse_count(spec, "n-gram range");
    return {n, n};
  }
  return {parse_count(spec.substr(0, dots), "n-gram range"),
          parse_count(spec.substr(dots + 2), "n-gram range")};
}

void PipelineConfig::validate() const {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ValidationError("test fraction must lie strictly between 0 and 1");
  }
  if (features.ngram_min < 1 || features.ngram_min > features.ngram_max) {
    throw ValidationError("n-gram range must satisfy 1 <= MIN <= MAX");
  }
  if (features.min_df < 1) throw ValidationError("min_df must be >= 1");
  if (select_k && *select_k < 1) throw ValidationError("select-k must be >= 1");
  if (!(lambda > 0.0)) throw ValidationError("lambda must be > 0");
  if (epochs < 1) throw ValidationError("epochs must be >= 1");
  if (!(alpha > 0.0)) throw ValidationError("alpha must be > 0");
}

json config_to_json(const PipelineConfig& c) {
  return {
      {"input", c.input},
      {"format", to_string(c.format)},
      {"class_col", c.class_column},
      {"test_fraction", c.test_fraction},
      {"seed", c.seed},
      {"clean", c.clean},
      {"normalize", normalize_spec(c.normalize)},
      {"select_k", c.select_k ? json(*c.select_k) : json(nullptr)},
      {"features", to_string(c.features.analyzer)},
      {"ngrams", std::to_string(c.features.ngram_min) + ".." + std::to_string(c.features.ngram_max)},
      {"min_df", c.features.min_df},
      {"weighting", to_string(c.weighting)},
      {"l2_normalize", c.l2_normalize},
      {"algo", to_string(c.algo)},
      {"lambda", c.lambda},
      {"epochs", c.epochs},
      {"alpha", c.alpha},
  };
}

PipelineConfig config_from_json(const json& doc, PipelineConfig c) {
  if (!doc.is_object()) throw ValidationError("config must be a JSON object");
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "input") {
        c.input = value.get<std::string>();
      } else if (key == "format") {
        c.format = parse_input_format(value.get<std::string>());
      } else if (key == "class_col" || key == "class-col") {
        c.class_column = value.is_number() ? std::to_string(value.get<std::size_t>())
                                           : value.get<std::string>();
      } else if (key == "test_fraction" || key == "test-fraction") {
        c.test_fraction = value.get<double>();
      } else if (key == "seed") {
        c.seed = value.get<std::uint64_t>();
      } else if (key == "clean") {
        c.clean = value.get<bool>();
      } else if (key == "normalize") {
        c.normalize = parse_normalize(value.get<std::string>());
      } else if (key == "select_k" || key == "select-k") {
        if (value.is_null()) {
          c.select_k.reset();
        } else {
          c.select_k = value.get<std::size_t>();
        }
      } else if (key == "features") {
        c.features.analyzer = parse_analyzer(value.get<std::string>());
      } else if (key == "ngrams") {
        std::tie(c.features.ngram_min, c.features.ngram_max) =
            parse_ngram_range(value.get<std::string>());
      } else if (key == "min_df" || key == "min-df") {
        c.features.min_df = value.get<std::size_t>();
      } else if (key == "weighting") {
        c.weighting = parse_weighting(value.get<std::string>());
      } else if (key == "l2_normalize" || key == "l2") {
        c.l2_normalize = value.get<bool>();
      } else if (key == "algo") {
        c.algo = parse_model_kind(value.get<std::string>());
      } else if (key == "lambda") {
        c.lambda = value.get<double>();
      } else if (key == "epochs") {
        c.epochs = value.get<std::size_t>();
      } else if (key == "alpha") {
        c.alpha = value.get<double>();
      } else if (key == "model" || key == "json") {
        // Command-level options, not part of the pipeline.
      } else {
        throw ValidationError("unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& ex) {
    throw ValidationError(std::string("invalid config value: ") + ex.what());
  }
  return c;
}

std::size_t FittedPipeline::feature_dimension() const {
  return (vocabulary ? vocabulary->size() : 0) + numeric_attributes.size();
}

Dataset read_dataset(std::istream& in, InputFormat format,
                     const std::optional<std::string>& class_column, bool infer_kinds) {
  if (format == InputFormat::kArff) {
    auto ds = parse_arff(in);
    if (!class_column) {
      ds.clear_class();
    } else if (class_column->empty()) {
      if (ds.num_attributes() == 0) throw ValidationError("dataset has no attributes");
      if (ds.class_index() != ds.num_attributes() - 1) ds.set_class_index(ds.num_attributes() - 1);
    } else {
      const auto idx = resolve_column(ds, *class_column);
      if (!idx) throw ValidationError("class column '" + *class_column + "' not found");
      ds.set_class_index(*idx);
    }
    return ds;
  }
  if (!class_column) return parse_csv(in, std::nullopt, true, infer_kinds);
  if (!class_column->empty()) return parse_csv(in, ColumnRef{*class_column}, true, infer_kinds);
  // Default class: the last column, counted from the header.
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::istringstream probe(text);
  CsvReader reader(probe);
  const auto header = reader.next();
  if (!header) throw ParseError("missing header row", 0);
  return parse_csv(std::string_view(text), ColumnRef{header->fields.size() - 1}, true, infer_kinds);
}

Dataset load_dataset(const std::string& path, InputFormat format,
                     const std::optional<std::string>& class_column) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open input file '" + path + "'");
  try {
    return read_dataset(in, format, class_column);
  } catch (const ParseError& ex) {
    throw ParseError(path + ": " + ex.what(), 0);
  }
}

Dataset prepare_dataset(const Dataset& ds, const PipelineConfig& config) {
  return deduplicate(config.clean ? clean_text_attributes(ds) : ds);
}

namespace {

std::vector<std::size_t> find_columns(const Dataset& ds, const std::vector<std::string>& names) {
  std::vector<std::size_t> out;
  out.reserve(names.size());
  for (const auto& name : names) {
    auto idx = ds.find_attribute(name);
    if (!idx || !ds.attribute(*idx).is_numeric()) {
      throw ValidationError("numeric attribute '" + name + "' not found after conversion");
    }
    out.push_back(*idx);
  }
  return out;
}

std::string document_text(const Row& row, const std::vector<std::size_t>& text_attributes) {
  std::string doc;
  for (auto a : text_attributes) {
    const auto* s = std::get_if<std::string>(&row[a]);
    if (!s) continue;
    if (!doc.empty()) doc.push_back(' ');
    doc += *s;
  }
  return doc;
}

std::optional<std::string> cell_as_string(const Dataset& data, std::size_t col, const Value& v) {
  if (is_missing(v)) return std::nullopt;
  if (const auto* d = std::get_if<double>(&v)) return format_number(*d);
  if (const auto* n = std::get_if<NominalIndex>(&v)) return data.attribute(col).values.at(n->index);
  return std::get<std::string>(v);
}

std::string now_utc() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

LabeledVectors featurize(const FittedPipeline& p, const Dataset& aligned) {
  const Dataset ds = p.config.clean ? clean_text_attributes(aligned) : aligned;
  const Dataset converted = nominal_to_numeric(ds);
  const auto numeric_columns = find_columns(converted, p.numeric_attributes);
  Dataset tabular = keep_attributes(converted, numeric_columns);
  tabular = p.config.normalize ? apply_normalizer(tabular, p.normalization)
                               : impute_missing(tabular, p.normalization);
  // keep_attributes preserves order, so the numeric columns are those of
  // `tabular` other than the class.
  std::vector<std::size_t> tab_columns;
  for (std::size_t a = 0; a < tabular.num_attributes(); ++a) {
    if (a != tabular.class_index()) tab_columns.push_back(a);
  }

  LabeledVectors out;
  out.num_classes = p.class_labels().size();
  out.dimension = p.feature_dimension();
  out.x.reserve(ds.size());
  const std::size_t vocab_size = p.vocabulary ? p.vocabulary->size() : 0;
  bool labeled = true;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    std::vector<SparseVector::Entry> entries;
    if (p.vocabulary) {
      const auto text = vectorize(document_text(ds.row(i), p.text_attributes), *p.vocabulary,
                                  p.config.weighting, p.config.l2_normalize);
      entries = text.entries();
    }
    const auto& row = tabular.row(i);
    for (std::size_t k = 0; k < tab_columns.size(); ++k) {
      entries.emplace_back(static_cast<std::uint32_t>(vocab_size + k),
                           std::get<double>(row[tab_columns[k]]));
    }
    out.x.push_back(SparseVector::from_entries(std::move(entries), out.dimension));
    const auto& cls = ds.row(i)[p.class_index];
    if (is_missing(cls)) {
      labeled = false;
    } else if (labeled) {
      out.y.push_back(std::get<NominalIndex>(cls).index);
    }
  }
  if (!labeled) out.y.clear();
  return out;
}

FittedPipeline fit_pipeline(const Dataset& train, const PipelineConfig& config) {
  config.validate();
  if (!train.has_class()) throw ValidationError("training data needs a class attribute");
  if (train.empty()) throw TrainingError("training split is empty");

  FittedPipeline p;
  p.config = config;
  p.input_schema = train.schema();
  p.class_index = *train.class_index();
  for (std::size_t a = 0; a < train.num_attributes(); ++a) {
    if (a != p.class_index && train.attribute(a).is_text()) p.text_attributes.push_back(a);
  }

  const Dataset converted = nominal_to_numeric(train);
  std::vector<std::size_t> candidates;
  for (std::size_t a = 0; a < converted.num_attributes(); ++a) {
    if (a != converted.class_index() && converted.attribute(a).is_numeric()) candidates.push_back(a);
  }
  if (config.select_k && !candidates.empty()) {
    const Dataset numeric_only = keep_attributes(converted, candidates);
    const auto ranking = rank_attributes(numeric_only);
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < std::min(*config.select_k, ranking.size()); ++i) {
      chosen.push_back(ranking[i].attribute);
    }
    std::sort(chosen.begin(), chosen.end());
    for (auto a : chosen) p.numeric_attributes.push_back(numeric_only.attribute(a).name);
  } else {
    for (auto a : candidates) p.numeric_attributes.push_back(converted.attribute(a).name);
  }
  const Dataset tabular = keep_attributes(converted, find_columns(converted, p.numeric_attributes));
  p.normalization = fit_normalizer(tabular, config.normalize.value_or(TargetRange::unit()));

  if (!p.text_attributes.empty()) {
    const Dataset cleaned = config.clean ? clean_text_attributes(train) : train;
    std::vector<std::string> docs;
    docs.reserve(cleaned.size());
    for (const auto& row : cleaned.rows()) docs.push_back(document_text(row, p.text_attributes));
    p.vocabulary = build_vocabulary(docs, config.features);
  }
  if (p.feature_dimension() == 0) throw TrainingError("no features left to train on");

  const auto vectors = featurize(p, train);
  switch (config.algo) {
    case ModelKind::kNbMultinomial:
      p.model = train_nb(vectors, NbVariant::kMultinomial, config.alpha);
      break;
    case ModelKind::kNbGaussian:
      p.model = train_nb(vectors, NbVariant::kGaussian, config.alpha);
      break;
    case ModelKind::kSvm: {
      auto svm = train_svm(vectors, {config.lambda, config.epochs, config.seed});
      p.info.svm_objective = svm_objective(vectors, svm.weights, svm.bias, svm.lambda, svm.positive_class);
      p.model = std::move(svm);
      break;
    }
  }
  p.info.train_instances = train.size();
  p.info.train_class_counts = vectors.class_counts();
  p.info.priors = laplace_priors(p.info.train_class_counts);
  p.info.created_at = now_utc();
  return p;
}

FittedPipeline train_pipeline(const Dataset& raw, const PipelineConfig& config,
                              const std::string& input_path) {
  config.validate();
  const Dataset prepared = prepare_dataset(raw, config);
  const auto split = stratified_split_indices(prepared, config.test_fraction, config.seed);
  auto p = fit_pipeline(prepared.subset(split.train), config);
  p.info.input_instances = raw.size();
  p.info.duplicates_removed = raw.size() - prepared.size();
  p.info.test_instances = split.test.size();
  p.held_out = {input_path, prepared.size(), split.test};
  return p;
}

std::vector<std::optional<std::size_t>> match_columns(const Dataset& data, const FittedPipeline& p) {
  std::vector<std::optional<std::size_t>> columns;
  columns.reserve(p.input_schema.size());
  for (const auto& attr : p.input_schema) columns.push_back(data.find_attribute(attr.name));
  return columns;
}

Row align_row(const Dataset& data, std::size_t r, const std::vector<std::optional<std::size_t>>& columns,
              const FittedPipeline& p) {
  Row out;
  out.reserve(p.input_schema.size());
  const auto& src = data.row(r);
  for (std::size_t a = 0; a < p.input_schema.size(); ++a) {
    const auto& attr = p.input_schema[a];
    if (!columns[a]) {
      out.emplace_back(Missing{});
      continue;
    }
    const auto col = *columns[a];
    const auto& cell = src[col];
    if (attr.is_numeric()) {
      if (const auto* d = std::get_if<double>(&cell)) {
        out.emplace_back(*d);
        continue;
      }
      const auto s = cell_as_string(data, col, cell);
      if (!s || s->empty()) {
        out.emplace_back(Missing{});
        continue;
      }
      const auto v = parse_decimal(*s);
      if (!v) throw ValidationError("attribute '" + attr.name + "': '" + *s + "' is not numeric");
      out.emplace_back(*v);
      continue;
    }
    const auto s = cell_as_string(data, col, cell);
    if (!s) {
      out.emplace_back(Missing{});
    } else if (attr.is_text()) {
      out.emplace_back(*s);
    } else {
      const auto idx = attr.value_index(*s);
      if (!idx) throw ValidationError("attribute '" + attr.name + "': unknown value '" + *s + "'");
      out.emplace_back(NominalIndex{*idx});
    }
  }
  return out;
}

Dataset align_to_schema(const Dataset& data, const FittedPipeline& p, bool require_class) {
  const auto columns = match_columns(data, p);
  std::vector<std::string> missing;
  for (std::size_t a = 0; a < columns.size(); ++a) {
    if (columns[a] || (a == p.class_index && !require_class)) continue;
    missing.push_back(p.input_schema[a].name);
  }
  if (!missing.empty()) {
    std::string msg = "schema mismatch: missing attributes";
    for (const auto& m : missing) msg += " -" + m;
    std::vector<std::string> extra;
    for (const auto& attr : data.schema()) {
      bool known = std::any_of(p.input_schema.begin(), p.input_schema.end(),
                               [&](const AttributeSpec& s) { return s.name == attr.name; });
      if (!known) msg += " +" + attr.name;
    }
    throw ValidationError(msg);
  }
  Dataset out("aligned", p.input_schema, p.class_index);
  out.reserve(data.size());
  for (std::size_t r = 0; r < data.size(); ++r) {
    try {
      auto row = align_row(data, r, columns, p);
      if (require_class && is_missing(row[p.class_index])) {
        throw ValidationError("missing class value");
      }
      out.add_row(std::move(row));
    } catch (const ValidationError& ex) {
      throw ValidationError("row " + std::to_string(r + 1) + ": " + ex.what());
    }
  }
  return out;
}

namespace {

json attribute_json(const AttributeSpec& a) {
  json j = {{"name", a.name}, {"kind", to_string(a.kind)}};
  if (a.is_nominal()) j["values"] = a.values;
  return j;
}

AttributeSpec attribute_from(const json& j) {
  const auto name = j.at("name").get<std::string>();
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "numeric") return AttributeSpec::numeric(name);
  if (kind == "text") return AttributeSpec::text(name);
  if (kind == "nominal") return AttributeSpec::nominal(name, j.at("values").get<std::vector<std::string>>());
  throw ValidationError("unknown attribute kind '" + kind + "'");
}

json model_json(const TrainedModel& model) {
  if (const auto* nb = std::get_if<NBModel>(&model)) {
    json j = {{"kind", model_kind(model)},
              {"alpha", nb->alpha},
              {"num_classes", nb->num_classes},
              {"dimension", nb->dimension},
              {"priors", nb->priors}};
    if (nb->variant == NbVariant::kMultinomial) {
      j["term_probabilities"] = nb->term_probabilities;
    } else {
      j["means"] = nb->means;
      j["stddevs"] = nb->stddevs;
    }
    return j;
  }
  const auto& svm = std::get<SVMModel>(model);
  return {{"kind", "svm"},
          {"weights", svm.weights},
          {"bias", svm.bias},
          {"lambda", svm.lambda},
          {"platt", {{"a", svm.calibration.a}, {"b", svm.calibration.b}}},
          {"positive_class", svm.positive_class}};
}

TrainedModel model_from(const json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "svm") {
    SVMModel svm;
    svm.weights = j.at("weights").get<std::vector<double>>();
    svm.bias = j.at("bias").get<double>();
    svm.lambda = j.at("lambda").get<double>();
    svm.calibration = {j.at("platt").at("a").get<double>(), j.at("platt").at("b").get<double>()};
    svm.positive_class = j.at("positive_class").get<std::size_t>();
    if (svm.positive_class > 1) throw ValidationError("SVM positive class must be 0 or 1");
    return svm;
  }
  NBModel nb;
  if (kind == "nb-multinomial") {
    nb.variant = NbVariant::kMultinomial;
    nb.term_probabilities = j.at("term_probabilities").get<std::vector<std::vector<double>>>();
  } else if (kind == "nb-gaussian") {
    nb.variant = NbVariant::kGaussian;
    nb.means = j.at("means").get<std::vector<std::vector<double>>>();
    nb.stddevs = j.at("stddevs").get<std::vector<std::vector<double>>>();
  } else {
    throw ValidationError("unknown model kind '" + kind + "'");
  }
  nb.alpha = j.at("alpha").get<double>();
  nb.num_classes = j.at("num_classes").get<std::size_t>();
  nb.dimension = j.at("dimension").get<std::size_t>();
  nb.priors = j.at("priors").get<std::vector<double>>();
  const auto& rows = nb.variant == NbVariant::kMultinomial ? nb.term_probabilities : nb.means;
  bool ok = nb.priors.size() == nb.num_classes && rows.size() == nb.num_classes;
  for (const auto& r : rows) ok = ok && r.size() == nb.dimension;
  if (nb.variant == NbVariant::kGaussian) {
    ok = ok && nb.stddevs.size() == nb.num_classes;
    for (const auto& r : nb.stddevs) ok = ok && r.size() == nb.dimension;
  }
  if (!ok) throw ValidationError("naive Bayes parameters do not match their declared shape");
  return nb;
}

}  // namespace

json pipeline_to_json(const FittedPipeline& p) {
  json schema = json::array();
  for (const auto& a : p.input_schema) schema.push_back(attribute_json(a));
  json scaling = json::array();
  for (const auto& s : p.normalization.attributes) {
    scaling.push_back({{"attribute", s.attribute}, {"name", s.name}, {"min", s.min}, {"max", s.max}, {"mean", s.mean}});
  }
  json vocab = nullptr;
  if (p.vocabulary) {
    json terms = json::array();
    for (std::size_t i = 0; i < p.vocabulary->size(); ++i) {
      terms.push_back(json::array({p.vocabulary->term(i), p.vocabulary->df(i)}));
    }
    vocab = {{"analyzer", to_string(p.vocabulary->config().analyzer)},
             {"ngram_min", p.vocabulary->config().ngram_min},
             {"ngram_max", p.vocabulary->config().ngram_max},
             {"min_df", p.vocabulary->config().min_df},
             {"doc_count", p.vocabulary->doc_count()},
             {"terms", std::move(terms)}};
  }
  return {
      {"format", "hatepipe-model"},
      {"version", kModelFormatVersion},
      {"config", config_to_json(p.config)},
      {"input_schema", std::move(schema)},
      {"class_index", p.class_index},
      {"text_attributes", p.text_attributes},
      {"numeric_attributes", p.numeric_attributes},
      {"normalization",
       {{"lo", p.normalization.range.lo},
        {"hi", p.normalization.range.hi},
        {"num_attributes", p.normalization.num_attributes},
        {"attributes", std::move(scaling)}}},
      {"vocabulary", std::move(vocab)},
      {"model", model_json(p.model)},
      {"training",
       {{"input_instances", p.info.input_instances},
        {"duplicates_removed", p.info.duplicates_removed},
        {"train_instances", p.info.train_instances},
        {"test_instances", p.info.test_instances},
        {"train_class_counts", p.info.train_class_counts},
        {"priors", p.info.priors},
        {"svm_objective", p.info.svm_objective ? json(*p.info.svm_objective) : json(nullptr)},
        {"created_at", p.info.created_at}}},
      {"held_out",
       {{"input_path", p.held_out.input_path},
        {"row_count", p.held_out.row_count},
        {"test_indices", p.held_out.test_indices}}},
  };
}

FittedPipeline pipeline_from_json(const json& doc) {
  if (!doc.is_object() || doc.value("format", "") != "hatepipe-model") {
    throw ValidationError("not a hatepipe model file");
  }
  if (doc.value("version", 0) != kModelFormatVersion) {
    throw ValidationError("unsupported model file version");
  }
  try {
    FittedPipeline p;
    p.config = config_from_json(doc.at("config"));
    for (const auto& a : doc.at("input_schema")) p.input_schema.push_back(attribute_from(a));
    p.class_index = doc.at("class_index").get<std::size_t>();
    if (p.class_index >= p.input_schema.size() || !p.input_schema[p.class_index].is_nominal()) {
      throw ValidationError("model class attribute is not a nominal input attribute");
    }
    p.text_attributes = doc.at("text_attributes").get<std::vector<std::size_t>>();
    for (auto a : p.text_attributes) {
      if (a >= p.input_schema.size()) throw ValidationError("text attribute index out of range");
    }
    p.numeric_attributes = doc.at("numeric_attributes").get<std::vector<std::string>>();
    const auto& norm = doc.at("normalization");
    p.normalization.range = {norm.at("lo").get<double>(), norm.at("hi").get<double>()};
    p.normalization.num_attributes = norm.at("num_attributes").get<std::size_t>();
    for (const auto& s : norm.at("attributes")) {
      p.normalization.attributes.push_back({s.at("attribute").get<std::size_t>(),
                                            s.at("name").get<std::string>(), s.at("min").get<double>(),
                                            s.at("max").get<double>(), s.at("mean").get<double>()});
    }
    const auto& vocab = doc.at("vocabulary");
    if (!vocab.is_null()) {
      VocabularyConfig vc{parse_analyzer(vocab.at("analyzer").get<std::string>()),
                          vocab.at("ngram_min").get<std::size_t>(),
                          vocab.at("ngram_max").get<std::size_t>(),
                          vocab.at("min_df").get<std::size_t>()};
      std::vector<std::pair<std::string, std::size_t>> terms;
      for (const auto& t : vocab.at("terms")) {
        terms.emplace_back(t.at(0).get<std::string>(), t.at(1).get<std::size_t>());
      }
      p.vocabulary = Vocabulary(vc, vocab.at("doc_count").get<std::size_t>(), std::move(terms));
    }
    p.model = model_from(doc.at("model"));
    if (model_dimension(p.model) != p.feature_dimension()) {
      throw ValidationError("model dimension does not match the fitted feature space");
    }
    const auto& t = doc.at("training");
    p.info.input_instances = t.at("input_instances").get<std::size_t>();
    p.info.duplicates_removed = t.at("duplicates_removed").get<std::size_t>();
    p.info.train_instances = t.at("train_instances").get<std::size_t>();
    p.info.test_instances = t.at("test_instances").get<std::size_t>();
    p.info.train_class_counts = t.at("train_class_counts").get<std::vector<std::size_t>>();
    p.info.priors = t.at("priors").get<std::vector<double>>();
    if (!t.at("svm_objective").is_null()) p.info.svm_objective = t.at("svm_objective").get<double>();
    p.info.created_at = t.at("created_at").get<std::string>();
    if (p.info.priors.size() != p.class_labels().size()) {
      throw ValidationError("prior count does not match the class count");
    }
    const auto& h = doc.at("held_out");
    p.held_out.input_path = h.at("input_path").get<std::string>();
    p.held_out.row_count = h.at("row_count").get<std::size_t>();
    p.held_out.test_indices = h.at("test_indices").get<std::vector<std::size_t>>();
    return p;
  } catch (const json::exception& ex) {
    throw ValidationError(std::string("malformed model file: ") + ex.what());
  }
}

void save_model(const FittedPipeline& pipeline, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write model file '" + path + "'");
  out << pipeline_to_json(pipeline).dump(1) << '\n';
  if (!out) throw ValidationError("failed writing model file '" + path + "'");
}

FittedPipeline load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open model file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& ex) {
    throw ValidationError("model file '" + path + "' is not valid JSON: " + ex.what());
  }
  return pipeline_from_json(doc);
}

}  // namespace hatepipe
