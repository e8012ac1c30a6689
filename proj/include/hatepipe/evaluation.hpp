#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hatepipe/classifier.hpp"
#include "hatepipe/dataset.hpp"
#include "hatepipe/labeled_vectors.hpp"

namespace hatepipe {

struct SplitIndices {
  std::vector<std::size_t> train;  // ascending
  std::vector<std::size_t> test;   // ascending
};

// Stratified hold-out. Each class contributes floor(n_c * fraction) test rows,
// plus one more for the classes with the largest remainders until the test
// set holds round(N * fraction) rows (remainder ties go to the lower class).
// Rows within a class are picked by a seeded shuffle.
// Throws ValidationError unless 0 < fraction < 1.
SplitIndices stratified_split_indices(const Dataset& ds, double fraction, std::uint64_t seed);

// Per-class test counts of the split above, without drawing rows.
std::vector<std::size_t> stratified_test_counts(std::span<const std::size_t> class_counts,
                                                double fraction);

std::pair<Dataset, Dataset> stratified_split(const Dataset& ds, double fraction,
                                             std::uint64_t seed);

// counts[i][j]: instances of actual class i predicted as class j.
class ConfusionMatrix {
 public:
  ConfusionMatrix() = default;
  ConfusionMatrix(std::vector<std::string> labels, std::vector<std::vector<std::uint64_t>> counts);

  std::size_t num_classes() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::vector<std::uint64_t>>& counts() const { return counts_; }
  std::uint64_t at(std::size_t actual, std::size_t predicted) const {
    return counts_.at(actual).at(predicted);
  }
  std::uint64_t total() const;
  std::uint64_t correct() const;
  std::uint64_t row_total(std::size_t actual) const;
  std::uint64_t column_total(std::size_t predicted) const;
  double accuracy() const;

  bool operator==(const ConfusionMatrix&) const = default;

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<std::uint64_t>> counts_;
};

// Throws ValidationError on a length mismatch or an index >= labels.size().
ConfusionMatrix confusion(std::span<const std::size_t> actuals,
                          std::span<const std::size_t> predictions,
                          std::vector<std::string> labels);

// Cohen's kappa; 0 when chance agreement is 1.
double kappa(const ConfusionMatrix& cm);

// Mann-Whitney AUC of `scores` for separating instances whose actual class is
// `positive_class` from the rest; tied pairs count one half. nullopt unless
// both groups are non-empty.
std::optional<double> roc_auc(std::span<const double> scores, std::span<const std::size_t> actuals,
                              std::size_t positive_class);

struct ClassStats {
  double tp_rate = 0.0;
  double fp_rate = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
  std::optional<double> roc_area;

  bool operator==(const ClassStats&) const = default;
};

struct PerClassStats {
  std::vector<ClassStats> classes;
  // Weighted by actual class support.
  ClassStats weighted;

  bool operator==(const PerClassStats&) const = default;
};

// ROC areas are filled when distributions are given (one per instance, in
// the order of `actuals`).
PerClassStats per_class_stats(const ConfusionMatrix& cm,
                              std::span<const ClassDistribution> distributions = {},
                              std::span<const std::size_t> actuals = {});

struct ErrorStats {
  double mean_absolute = 0.0;
  double root_mean_squared = 0.0;
  // Percent of the prior predictor's error; nullopt when that error is 0.
  std::optional<double> relative_absolute;
  std::optional<double> root_relative_squared;

  bool operator==(const ErrorStats&) const = default;
};

ErrorStats error_stats(std::span<const ClassDistribution> distributions,
                       std::span<const std::size_t> actuals, std::span<const double> priors);

// Predicted probabilities are clamped to [1e-10, 1 - 1e-10] before any log.
inline constexpr double kProbabilityClamp = 1e-10;

struct KbScores {
  double relative_percent = 0.0;  // sum of per-instance percentage scores
  double total_bits = 0.0;
  double bits_per_instance = 0.0;

  bool operator==(const KbScores&) const = default;
};

KbScores kb_scores(std::span<const ClassDistribution> distributions,
                   std::span<const std::size_t> actuals, std::span<const double> priors);

struct ClassComplexity {
  double order0_bits = 0.0;
  double scheme_bits = 0.0;
  double improvement_bits = 0.0;  // order0 - scheme
  double order0_per_instance = 0.0;
  double scheme_per_instance = 0.0;
  double improvement_per_instance = 0.0;

  bool operator==(const ClassComplexity&) const = default;
};

ClassComplexity class_complexity(std::span<const ClassDistribution> distributions,
                                 std::span<const std::size_t> actuals,
                                 std::span<const double> priors);

struct EvaluationReport {
  std::string title;  // e.g. "held-out test split", "resubstitution"
  std::uint64_t num_instances = 0;
  std::uint64_t correct = 0;
  std::uint64_t incorrect = 0;
  double correct_percent = 0.0;
  double incorrect_percent = 0.0;
  double kappa = 0.0;
  KbScores kb;
  ClassComplexity complexity;
  ErrorStats errors;
  ConfusionMatrix matrix;
  PerClassStats per_class;

  bool operator==(const EvaluationReport&) const = default;
};

// Assembles every statistic from one prediction per instance. `priors` is the
// training class distribution used by the baseline-relative statistics.
// Throws EvaluationError on an empty test set.
EvaluationReport evaluate(std::span<const Prediction> predictions,
                          std::span<const std::size_t> actuals,
                          const std::vector<std::string>& labels, std::span<const double> priors,
                          std::string title = "test set");

// Runs the model once per test instance, then evaluates.
EvaluationReport evaluate(const TrainedModel& model, const LabeledVectors& test,
                          const std::vector<std::string>& labels, std::span<const double> priors,
                          std::string title = "test set");

// Laplace-corrected class distribution (n_c + 1) / (N + C).
std::vector<double> laplace_priors(std::span<const std::size_t> class_counts);

}  // namespace hatepipe
