#include "hatepipe/cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hatepipe/arff.hpp"
#include "hatepipe/csv.hpp"
#include "hatepipe/error.hpp"
#include "hatepipe/evaluation.hpp"
#include "hatepipe/pipeline.hpp"
#include "hatepipe/report.hpp"
#include "hatepipe/synthetic.hpp"

namespace hatepipe {
namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitFailure = 2;

// Raw flag values; an option is applied over the config file only when given.
struct PipelineFlags {
  std::string input;
  std::string format;
  std::string class_col;
  double test_fraction = 0.0;
  std::uint64_t seed = 0;
  bool no_clean = false;
  std::string normalize;
  std::size_t select_k = 0;
  std::string features;
  std::string ngrams;
  std::size_t min_df = 0;
  std::string weighting;
  bool l2 = false;
  std::string algo;
  double lambda = 0.0;
  std::size_t epochs = 0;
  double alpha = 0.0;
  std::string config_path;

  std::vector<std::pair<std::string, CLI::Option*>> options;

  bool given(std::string_view name) const {
    for (const auto& [n, opt] : options) {
      if (n == name) return opt->count() > 0;
    }
    return false;
  }
};

void add_data_flags(CLI::App& cmd, PipelineFlags& f) {
  auto add = [&](std::string name, CLI::Option* opt) { f.options.emplace_back(std::move(name), opt); };
  add("input", cmd.add_option("--input", f.input, "Input data file"));
  add("format", cmd.add_option("--format", f.format, "csv or arff"));
  add("class-col", cmd.add_option("--class-col", f.class_col, "Class column name or 0-based index"));
  add("config", cmd.add_option("--config", f.config_path, "JSON config file; flags take precedence"));
}

void add_training_flags(CLI::App& cmd, PipelineFlags& f) {
  auto add = [&](std::string name, CLI::Option* opt) { f.options.emplace_back(std::move(name), opt); };
  add("test-fraction", cmd.add_option("--test-fraction", f.test_fraction, "Held-out fraction in (0,1)"));
  add("seed", cmd.add_option("--seed", f.seed, "Split and optimizer seed"));
  add("no-clean", cmd.add_flag("--no-clean", f.no_clean, "Skip text cleaning"));
  add("normalize", cmd.add_option("--normalize", f.normalize, "0,1 | -1,1 | none"));
  add("select-k", cmd.add_option("--select-k", f.select_k, "Keep the k most informative numeric attributes"));
  add("features", cmd.add_option("--features", f.features, "word or char n-grams"));
  add("ngrams", cmd.add_option("--ngrams", f.ngrams, "n-gram range MIN..MAX"));
  add("min-df", cmd.add_option("--min-df", f.min_df, "Minimum document frequency"));
  add("weighting", cmd.add_option("--weighting", f.weighting, "binary | tf | tfidf"));
  add("l2", cmd.add_flag("--l2", f.l2, "L2-normalize text vectors"));
  add("algo", cmd.add_option("--algo", f.algo, "nb | nb-gaussian | svm"));
  add("lambda", cmd.add_option("--lambda", f.lambda, "SVM regularization"));
  add("epochs", cmd.add_option("--epochs", f.epochs, "SVM passes over the data"));
  add("alpha", cmd.add_option("--alpha", f.alpha, "Naive Bayes smoothing"));
}

json read_json_file(const std::string& path, std::string_view what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + std::string(what) + " '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& ex) {
    throw ValidationError(std::string(what) + " '" + path + "' is not valid JSON: " + ex.what());
  }
}

PipelineConfig resolve_config(const PipelineFlags& f, PipelineConfig c = {}) {
  if (f.given("config")) c = config_from_json(read_json_file(f.config_path, "config file"), c);
  if (f.given("input")) c.input = f.input;
  if (f.given("format")) c.format = parse_input_format(f.format);
  if (f.given("class-col")) c.class_column = f.class_col;
  if (f.given("test-fraction")) c.test_fraction = f.test_fraction;
  if (f.given("seed")) c.seed = f.seed;
  if (f.given("no-clean")) c.clean = !f.no_clean;
  if (f.given("normalize")) c.normalize = parse_normalize(f.normalize);
  if (f.given("select-k")) c.select_k = f.select_k;
  if (f.given("features")) c.features.analyzer = parse_analyzer(f.features);
  if (f.given("ngrams")) std::tie(c.features.ngram_min, c.features.ngram_max) = parse_ngram_range(f.ngrams);
  if (f.given("min-df")) c.features.min_df = f.min_df;
  if (f.given("weighting")) c.weighting = parse_weighting(f.weighting);
  if (f.given("l2")) c.l2_normalize = f.l2;
  if (f.given("algo")) c.algo = parse_model_kind(f.algo);
  if (f.given("lambda")) c.lambda = f.lambda;
  if (f.given("epochs")) c.epochs = f.epochs;
  if (f.given("alpha")) c.alpha = f.alpha;
  return c;
}

bool same_file(const std::string& a, const std::string& b) {
  if (a.empty() || b.empty()) return false;
  std::error_code ec;
  const auto ca = std::filesystem::weakly_canonical(a, ec);
  if (ec) return false;
  const auto cb = std::filesystem::weakly_canonical(b, ec);
  return !ec && ca == cb;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << text;
  if (!out) throw ValidationError("failed writing '" + path + "'");
}

int cmd_train(const PipelineFlags& f, const std::string& model_path, std::ostream& out) {
  const auto config = resolve_config(f);
  config.validate();
  if (config.input.empty()) throw ValidationError("train needs --input");
  const auto raw = load_dataset(config.input, config.format, config.class_column);
  const auto pipeline = train_pipeline(raw, config, config.input);
  save_model(pipeline, model_path);

  const auto& info = pipeline.info;
  out << "instances: " << info.input_instances << " (duplicates removed: " << info.duplicates_removed
      << ")\n";
  out << "train: " << info.train_instances << "  test: " << info.test_instances << '\n';
  out << "class counts (train):";
  for (std::size_t c = 0; c < info.train_class_counts.size(); ++c) {
    out << ' ' << pipeline.class_labels()[c] << '=' << info.train_class_counts[c];
  }
  out << '\n';
  out << "vocabulary: " << (pipeline.vocabulary ? pipeline.vocabulary->size() : 0) << " terms\n";
  out << "numeric attributes: " << pipeline.numeric_attributes.size() << '\n';
  out << "model: " << model_kind(pipeline.model) << " (" << pipeline.feature_dimension()
      << " features)\n";
  if (info.svm_objective) out << "svm objective: " << format_number(*info.svm_objective) << '\n';
  out << "model written to " << model_path << '\n';
  return kExitOk;
}

LabeledVectors held_out_vectors(const FittedPipeline& p) {
  const auto& h = p.held_out;
  const auto raw = load_dataset(h.input_path, p.config.format, p.config.class_column);
  const auto prepared = prepare_dataset(raw, p.config);
  if (prepared.size() != h.row_count) {
    throw ValidationError("training file '" + h.input_path + "' changed since the model was trained (" +
                          std::to_string(prepared.size()) + " rows, expected " +
                          std::to_string(h.row_count) + ")");
  }
  const auto aligned = align_to_schema(prepared.subset(h.test_indices), p, true);
  return featurize(p, aligned);
}

int cmd_evaluate(const PipelineFlags& f, const std::string& model_path, bool held_out,
                 const std::string& json_path, std::ostream& out) {
  const auto pipeline = load_model(model_path);
  LabeledVectors test;
  std::string title;
  if (held_out) {
    test = held_out_vectors(pipeline);
    title = "held-out test split";
  } else {
    PipelineConfig base = pipeline.config;
    base.input.clear();
    const auto config = resolve_config(f, base);
    if (config.input.empty()) throw ValidationError("evaluate needs --input or --held-out");
    const auto raw = load_dataset(config.input, config.format, config.class_column);
    test = featurize(pipeline, align_to_schema(raw, pipeline, true));
    title = same_file(config.input, pipeline.config.input) ? "resubstitution" : "test set";
  }
  const auto report = evaluate(pipeline.model, test, pipeline.class_labels(), pipeline.info.priors, title);
  out << render_report(report);
  if (!json_path.empty()) write_text_file(json_path, report_to_json(report).dump(1) + "\n");
  return kExitOk;
}

// Reads prediction input record by record so that one malformed row does not
// abort the whole file. CSV columns stay text; alignment converts them.
struct PredictInput {
  Dataset data;
  std::vector<std::size_t> lines;  // source line per row
  std::size_t failed = 0;
};

PredictInput read_predict_input(const PipelineConfig& config, std::ostream& err) {
  std::ifstream in(config.input, std::ios::binary);
  if (!in) throw ValidationError("cannot open input file '" + config.input + "'");
  PredictInput result;
  if (config.format == InputFormat::kArff) {
    result.data = read_dataset(in, InputFormat::kArff, std::nullopt);
    for (std::size_t i = 0; i < result.data.size(); ++i) result.lines.push_back(i + 1);
    return result;
  }
  CsvReader reader(in);
  const auto header = reader.next();
  if (!header) return result;
  std::vector<AttributeSpec> schema;
  for (std::size_t i = 0; i < header->fields.size(); ++i) {
    const auto& name = header->fields[i];
    schema.push_back(AttributeSpec::text(name.empty() ? "col" + std::to_string(i + 1) : name));
  }
  result.data = Dataset("predict", schema, std::nullopt);
  while (true) {
    std::optional<CsvRecord> record;
    try {
      record = reader.next();
    } catch (const ParseError& ex) {
      err << "warning: " << ex.what() << "; remaining input skipped\n";
      ++result.failed;
      break;
    }
    if (!record) break;
    if (record->fields.size() != schema.size()) {
      err << "warning: line " << record->line << " skipped: expected " << schema.size()
          << " fields, found " << record->fields.size() << '\n';
      ++result.failed;
      continue;
    }
    Row row;
    for (auto& field : record->fields) {
      if (field.empty()) {
        row.emplace_back(Missing{});
      } else {
        row.emplace_back(std::move(field));
      }
    }
    result.data.add_row(std::move(row));
    result.lines.push_back(record->line);
  }
  return result;
}

int cmd_predict(const PipelineFlags& f, const std::string& model_path, std::ostream& out,
                std::ostream& err) {
  const auto pipeline = load_model(model_path);
  PipelineConfig base = pipeline.config;
  base.input.clear();
  const auto config = resolve_config(f, base);
  if (config.input.empty()) throw ValidationError("predict needs --input");

  auto input = read_predict_input(config, err);
  auto columns = match_columns(input.data, pipeline);
  columns[pipeline.class_index].reset();
  std::string missing;
  for (std::size_t a = 0; a < columns.size(); ++a) {
    if (a != pipeline.class_index && !columns[a]) missing += " -" + pipeline.input_schema[a].name;
  }
  if (!missing.empty() && !input.data.empty()) {
    throw ValidationError("schema mismatch: missing attributes" + missing);
  }

  Dataset aligned("aligned", pipeline.input_schema, pipeline.class_index);
  std::vector<std::size_t> row_numbers;
  for (std::size_t r = 0; r < input.data.size(); ++r) {
    try {
      aligned.add_row(align_row(input.data, r, columns, pipeline));
      row_numbers.push_back(r + 1);
    } catch (const Error& ex) {
      err << "warning: line " << input.lines[r] << " skipped: " << ex.what() << '\n';
      ++input.failed;
    }
  }

  const auto& labels = pipeline.class_labels();
  std::vector<std::string> header = {"row", "predicted"};
  for (const auto& l : labels) header.push_back("p(" + l + ")");
  header.push_back(std::holds_alternative<SVMModel>(pipeline.model) ? "decision" : "posterior");
  write_csv_record(out, header);

  if (!aligned.empty()) {
    const auto vectors = featurize(pipeline, aligned);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      const auto p = predict(pipeline.model, vectors.x[i]);
      std::vector<std::string> fields = {std::to_string(row_numbers[i]), labels[p.label]};
      for (double prob : p.distribution.probabilities) fields.push_back(format_number(prob));
      fields.push_back(format_number(p.score));
      write_csv_record(out, fields);
    }
  }
  if (input.failed > 0 && aligned.empty()) {
    err << "error: no row could be predicted\n";
    return kExitInput;
  }
  return kExitOk;
}

int cmd_report(const std::string& path, std::ostream& out) {
  out << render_report(report_from_json(read_json_file(path, "report file")));
  return kExitOk;
}

int cmd_generate(const SyntheticOptions& options, const std::string& format, const std::string& path,
                 std::ostream& out) {
  const auto corpus = generate_synthetic_corpus(options);
  std::ostringstream text;
  if (parse_input_format(format) == InputFormat::kArff) {
    write_arff(text, corpus);
  } else {
    write_csv_record(text, {"text", "class"});
    const auto& labels = corpus.class_attribute().values;
    for (const auto& row : corpus.rows()) {
      write_csv_record(text, {std::get<std::string>(row[0]), labels[std::get<NominalIndex>(row[1]).index]});
    }
  }
  if (path.empty() || path == "-") {
    out << text.str();
  } else {
    write_text_file(path, text.str());
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Text classification for offensive-language detection", "hatepipe"};
  app.require_subcommand(1);

  PipelineFlags train_flags;
  std::string train_model;
  auto* train = app.add_subcommand("train", "Split, fit and save a model");
  add_data_flags(*train, train_flags);
  add_training_flags(*train, train_flags);
  train->add_option("--model", train_model, "Output model file")->required();

  PipelineFlags eval_flags;
  std::string eval_model;
  std::string eval_json;
  bool held_out = false;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Evaluate a model and print the report");
  add_data_flags(*evaluate_cmd, eval_flags);
  evaluate_cmd->add_option("--model", eval_model, "Model file")->required();
  evaluate_cmd->add_flag("--held-out", held_out, "Use the split stored in the model");
  evaluate_cmd->add_option("--json", eval_json, "Also write the report as JSON");

  PipelineFlags predict_flags;
  std::string predict_model;
  auto* predict_cmd = app.add_subcommand("predict", "Label new rows as CSV on stdout");
  add_data_flags(*predict_cmd, predict_flags);
  predict_cmd->add_option("--model", predict_model, "Model file")->required();

  std::string report_path;
  auto* report = app.add_subcommand("report", "Render a JSON report as text");
  report->add_option("--json,--input", report_path, "Report JSON file")->required();

  SyntheticOptions synth;
  std::string synth_format = "csv";
  std::string synth_output;
  auto* generate = app.add_subcommand("generate", "Write the synthetic two-class corpus");
  generate->add_option("--documents", synth.documents, "Number of documents")->capture_default_str();
  generate->add_option("--seed", synth.seed, "Generator seed")->capture_default_str();
  generate->add_option("--label-noise", synth.label_noise, "Fraction of flipped labels")->capture_default_str();
  generate->add_option("--format", synth_format, "csv or arff")->capture_default_str();
  generate->add_option("--output", synth_output, "Output file; stdout when omitted");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*train) return cmd_train(train_flags, train_model, out);
    if (*evaluate_cmd) return cmd_evaluate(eval_flags, eval_model, held_out, eval_json, out);
    if (*predict_cmd) return cmd_predict(predict_flags, predict_model, out, err);
    if (*report) return cmd_report(report_path, out);
    if (*generate) return cmd_generate(synth, synth_format, synth_output, out);
  } catch (const ParseError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitInput;
  } catch (const ValidationError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitInput;
  } catch (const TrainingError& ex) {
    err << "training failed: " << ex.what() << '\n';
    return kExitFailure;
  } catch (const EvaluationError& ex) {
    err << "evaluation failed: " << ex.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitFailure;
  }
  return kExitInput;
}

}  // namespace hatepipe
