#include "hatepipe/report.hpp"

#include <cmath>

#include <fmt/format.h>

#include "hatepipe/error.hpp"

namespace hatepipe {
namespace {

constexpr int kLabelWidth = 34;

std::string fixed(double v, int decimals) {
  if (!std::isfinite(v)) return "?";
  // Avoid printing "-0.0000".
  const double scale = std::pow(10.0, decimals);
  if (std::round(v * scale) == 0.0) v = 0.0;
  return fmt::format("{:.{}f}", v, decimals);
}

std::string fixed(const std::optional<double>& v, int decimals) {
  return v ? fixed(*v, decimals) : "?";
}

std::string line(std::string_view label, const std::string& value) {
  return fmt::format("{:<{}}{}\n", label, kLabelWidth, value);
}

std::string bits_line(std::string_view label, double total, double per_instance) {
  return line(label, fmt::format("{} bits    {} bits/instance", fixed(total, 4), fixed(per_instance, 4)));
}

// Weka names confusion-matrix columns a, b, ..., z, then aa, ab, ...
std::string column_name(std::size_t index) {
  std::string name;
  std::size_t i = index + 1;
  while (i > 0) {
    --i;
    name.insert(name.begin(), static_cast<char>('a' + i % 26));
    i /= 26;
  }
  return name;
}

std::string stats_row(std::string_view head, const ClassStats& s, std::string_view label) {
  auto out = fmt::format("{:<15}{:<9}{:<9}{:<11}{:<8}{:<11}{:<10}{}", head, fixed(s.tp_rate, 3),
                         fixed(s.fp_rate, 3), fixed(s.precision, 3), fixed(s.recall, 3),
                         fixed(s.f_measure, 3), fixed(s.roc_area, 3), label);
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out + "\n";
}

nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::optional<double> optional_from(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

nlohmann::json class_stats_json(const ClassStats& s) {
  return {{"tp_rate", s.tp_rate},     {"fp_rate", s.fp_rate},
          {"precision", s.precision}, {"recall", s.recall},
          {"f_measure", s.f_measure}, {"roc_area", optional_json(s.roc_area)}};
}

ClassStats class_stats_from(const nlohmann::json& j) {
  ClassStats s;
  s.tp_rate = j.at("tp_rate").get<double>();
  s.fp_rate = j.at("fp_rate").get<double>();
  s.precision = j.at("precision").get<double>();
  s.recall = j.at("recall").get<double>();
  s.f_measure = j.at("f_measure").get<double>();
  s.roc_area = optional_from(j.at("roc_area"));
  return s;
}

}  // namespace

std::string render_report(const EvaluationReport& r) {
  std::string out;
  out += fmt::format("=== Evaluation on {} ===\n\n", r.title);
  out += "=== Summary ===\n\n";
  out += line("Correctly Classified Instances",
              fmt::format("{}    {} %", r.correct, fixed(r.correct_percent, 4)));
  out += line("Incorrectly Classified Instances",
              fmt::format("{}    {} %", r.incorrect, fixed(r.incorrect_percent, 4)));
  out += line("Kappa statistic", fixed(r.kappa, 4));
  out += line("K&B Relative Info Score", fixed(r.kb.relative_percent, 4) + " %");
  out += bits_line("K&B Information Score", r.kb.total_bits, r.kb.bits_per_instance);
  out += bits_line("Class complexity | order 0", r.complexity.order0_bits,
                   r.complexity.order0_per_instance);
  out += bits_line("Class complexity | scheme", r.complexity.scheme_bits,
                   r.complexity.scheme_per_instance);
  out += bits_line("Complexity improvement (Sf)", r.complexity.improvement_bits,
                   r.complexity.improvement_per_instance);
  out += line("Mean absolute error", fixed(r.errors.mean_absolute, 4));
  out += line("Root mean squared error", fixed(r.errors.root_mean_squared, 4));
  out += line("Relative absolute error",
              r.errors.relative_absolute ? fixed(r.errors.relative_absolute, 4) + " %" : "?");
  out += line("Root relative squared error",
              r.errors.root_relative_squared ? fixed(r.errors.root_relative_squared, 4) + " %"
                                             : "?");
  out += line("Total Number of Instances", std::to_string(r.num_instances));

  out += "\n=== Detailed Accuracy By Class ===\n\n";
  out += "               TP Rate  FP Rate  Precision  Recall  F-Measure  ROC Area  Class\n";
  const auto& labels = r.matrix.labels();
  for (std::size_t c = 0; c < r.per_class.classes.size(); ++c) {
    out += stats_row("", r.per_class.classes[c], c < labels.size() ? labels[c] : "");
  }
  out += stats_row("Weighted Avg.", r.per_class.weighted, "");

  out += "\n=== Confusion Matrix ===\n\n";
  const auto k = r.matrix.num_classes();
  for (std::size_t c = 0; c < k; ++c) out += column_name(c) + " ";
  out += "<-- classified as\n";
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) out += std::to_string(r.matrix.at(i, j)) + " ";
    out += fmt::format("| {} = {}\n", column_name(i), labels[i]);
  }
  return out;
}

nlohmann::json report_to_json(const EvaluationReport& r) {
  nlohmann::json per_class = nlohmann::json::array();
  for (const auto& s : r.per_class.classes) per_class.push_back(class_stats_json(s));
  return {
      {"format", "hatepipe-report"},
      {"version", kReportFormatVersion},
      {"title", r.title},
      {"num_instances", r.num_instances},
      {"correct", r.correct},
      {"incorrect", r.incorrect},
      {"correct_percent", r.correct_percent},
      {"incorrect_percent", r.incorrect_percent},
      {"kappa", r.kappa},
      {"kb",
       {{"relative_percent", r.kb.relative_percent},
        {"total_bits", r.kb.total_bits},
        {"bits_per_instance", r.kb.bits_per_instance}}},
      {"complexity",
       {{"order0_bits", r.complexity.order0_bits},
        {"scheme_bits", r.complexity.scheme_bits},
        {"improvement_bits", r.complexity.improvement_bits},
        {"order0_per_instance", r.complexity.order0_per_instance},
        {"scheme_per_instance", r.complexity.scheme_per_instance},
        {"improvement_per_instance", r.complexity.improvement_per_instance}}},
      {"errors",
       {{"mean_absolute", r.errors.mean_absolute},
        {"root_mean_squared", r.errors.root_mean_squared},
        {"relative_absolute", optional_json(r.errors.relative_absolute)},
        {"root_relative_squared", optional_json(r.errors.root_relative_squared)}}},
      {"confusion_matrix", {{"labels", r.matrix.labels()}, {"counts", r.matrix.counts()}}},
      {"per_class", per_class},
      {"weighted_avg", class_stats_json(r.per_class.weighted)},
  };
}

EvaluationReport report_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || doc.value("format", "") != "hatepipe-report") {
    throw ValidationError("not a hatepipe report document");
  }
  if (doc.value("version", 0) != kReportFormatVersion) {
    throw ValidationError("unsupported report version");
  }
  try {
    EvaluationReport r;
    r.title = doc.at("title").get<std::string>();
    r.num_instances = doc.at("num_instances").get<std::uint64_t>();
    r.correct = doc.at("correct").get<std::uint64_t>();
    r.incorrect = doc.at("incorrect").get<std::uint64_t>();
    r.correct_percent = doc.at("correct_percent").get<double>();
    r.incorrect_percent = doc.at("incorrect_percent").get<double>();
    r.kappa = doc.at("kappa").get<double>();
    const auto& kb = doc.at("kb");
    r.kb = {kb.at("relative_percent").get<double>(), kb.at("total_bits").get<double>(),
            kb.at("bits_per_instance").get<double>()};
    const auto& cc = doc.at("complexity");
    r.complexity = {cc.at("order0_bits").get<double>(),         cc.at("scheme_bits").get<double>(),
                    cc.at("improvement_bits").get<double>(),    cc.at("order0_per_instance").get<double>(),
                    cc.at("scheme_per_instance").get<double>(), cc.at("improvement_per_instance").get<double>()};
    const auto& e = doc.at("errors");
    r.errors.mean_absolute = e.at("mean_absolute").get<double>();
    r.errors.root_mean_squared = e.at("root_mean_squared").get<double>();
    r.errors.relative_absolute = optional_from(e.at("relative_absolute"));
    r.errors.root_relative_squared = optional_from(e.at("root_relative_squared"));
    const auto& cm = doc.at("confusion_matrix");
    r.matrix = ConfusionMatrix(cm.at("labels").get<std::vector<std::string>>(),
                               cm.at("counts").get<std::vector<std::vector<std::uint64_t>>>());
    for (const auto& s : doc.at("per_class")) r.per_class.classes.push_back(class_stats_from(s));
    r.per_class.weighted = class_stats_from(doc.at("weighted_avg"));
    return r;
  } catch (const nlohmann::json::exception& ex) {
    throw ValidationError(std::string("malformed report document: ") + ex.what());
  }
}

}  // namespace hatepipe
