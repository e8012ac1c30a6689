#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "hatepipe/classifier.hpp"
#include "hatepipe/dataset.hpp"
#include "hatepipe/features.hpp"
#include "hatepipe/labeled_vectors.hpp"
#include "hatepipe/preprocess.hpp"

namespace hatepipe {

enum class InputFormat { kCsv, kArff };
enum class ModelKind { kNbMultinomial, kNbGaussian, kSvm };

std::string_view to_string(InputFormat f);
std::string_view to_string(ModelKind k);
InputFormat parse_input_format(std::string_view name);
// Accepts "nb" (multinomial), "nb-multinomial", "nb-gaussian" and "svm".
ModelKind parse_model_kind(std::string_view name);
// "0,1", "-1,1" or "none".
std::optional<TargetRange> parse_normalize(std::string_view spec);
// "MIN..MAX" or a single N.
std::pair<std::size_t, std::size_t> parse_ngram_range(std::string_view spec);

struct PipelineConfig {
  std::string input;
  InputFormat format = InputFormat::kCsv;
  // Name or 0-based position; empty selects the last column.
  std::string class_column;
  double test_fraction = 0.2;
  std::uint64_t seed = 1;
  bool clean = true;
  // nullopt: impute missing values only, no scaling.
  std::optional<TargetRange> normalize = TargetRange::unit();
  std::optional<std::size_t> select_k;
  VocabularyConfig features;
  Weighting weighting = Weighting::kTfidf;
  bool l2_normalize = false;
  ModelKind algo = ModelKind::kSvm;
  double lambda = 1e-4;
  std::size_t epochs = 10;
  double alpha = 1.0;

  // Throws ValidationError on out-of-range values.
  void validate() const;
  bool operator==(const PipelineConfig&) const = default;
};

nlohmann::json config_to_json(const PipelineConfig& config);
// Missing keys keep the values already in `base`.
PipelineConfig config_from_json(const nlohmann::json& doc, PipelineConfig base = {});

struct TrainingInfo {
  std::size_t input_instances = 0;
  std::size_t duplicates_removed = 0;
  std::size_t train_instances = 0;
  std::size_t test_instances = 0;
  std::vector<std::size_t> train_class_counts;
  std::vector<double> priors;  // Laplace-corrected training distribution
  std::optional<double> svm_objective;
  std::string created_at;

  bool operator==(const TrainingInfo&) const = default;
};

struct HeldOutSplit {
  std::string input_path;
  std::size_t row_count = 0;  // rows after cleaning and deduplication
  std::vector<std::size_t> test_indices;

  bool operator==(const HeldOutSplit&) const = default;
};

// Everything needed to featurize new data and predict: the raw input schema,
// fitted preprocessing, vocabulary and model.
struct FittedPipeline {
  PipelineConfig config;
  std::vector<AttributeSpec> input_schema;
  std::size_t class_index = 0;
  std::vector<std::size_t> text_attributes;
  // Numeric attributes (after nominal conversion) fed to the model, in order.
  std::vector<std::string> numeric_attributes;
  NormalizationParams normalization;
  std::optional<Vocabulary> vocabulary;
  TrainedModel model;
  TrainingInfo info;
  HeldOutSplit held_out;

  const std::vector<std::string>& class_labels() const {
    return input_schema.at(class_index).values;
  }
  std::size_t feature_dimension() const;
  bool operator==(const FittedPipeline&) const = default;
};

// Reads a dataset in the given format, designating the class column for
// labeled data. CSV columns are typed by inference.
Dataset load_dataset(const std::string& path, InputFormat format,
                     const std::optional<std::string>& class_column);
Dataset read_dataset(std::istream& in, InputFormat format,
                     const std::optional<std::string>& class_column, bool infer_kinds = true);

// Cleans text attributes when enabled, then drops duplicate rows.
Dataset prepare_dataset(const Dataset& ds, const PipelineConfig& config);

// Fits preprocessing, vocabulary and the model on a training split whose
// schema becomes the pipeline's input schema.
FittedPipeline fit_pipeline(const Dataset& train, const PipelineConfig& config);

// Converts a dataset with arbitrary column order and kinds onto the fitted
// input schema, matching columns by name. Without require_class the class
// column may be absent. Throws ValidationError listing missing attributes or
// naming the offending row.
Dataset align_to_schema(const Dataset& data, const FittedPipeline& pipeline, bool require_class);

// One aligned row; throws ValidationError on an unconvertible value.
Row align_row(const Dataset& data, std::size_t row, const std::vector<std::optional<std::size_t>>& columns,
              const FittedPipeline& pipeline);
// Source column for every input attribute (nullopt when absent).
std::vector<std::optional<std::size_t>> match_columns(const Dataset& data,
                                                      const FittedPipeline& pipeline);

// Featurizes rows already on the input schema (text cleaning is applied here
// when enabled). Labels are filled when the class is present.
LabeledVectors featurize(const FittedPipeline& pipeline, const Dataset& aligned);

// Full training run: load, prepare, split, fit. `input_path` is recorded for
// held-out evaluation.
FittedPipeline train_pipeline(const Dataset& raw, const PipelineConfig& config,
                              const std::string& input_path);

inline constexpr int kModelFormatVersion = 1;

nlohmann::json pipeline_to_json(const FittedPipeline& pipeline);
FittedPipeline pipeline_from_json(const nlohmann::json& doc);
void save_model(const FittedPipeline& pipeline, const std::string& path);
FittedPipeline load_model(const std::string& path);

}  // namespace hatepipe
